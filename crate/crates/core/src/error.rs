use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("matrix is not Hermitian: asymmetry {asymmetry:e} exceeds {limit:e}")]
    NotHermitian { asymmetry: f64, limit: f64 },

    #[error("not PSD: block {block} has a={a}, b={b}, |z|^2={z_norm_sqr}")]
    NotPsd {
        block: usize,
        a: f64,
        b: f64,
        z_norm_sqr: f64,
    },

    #[error("negative witness diagonal at index {index}")]
    NegativeWitnessDiagonal { index: usize },

    #[error("diagonal entry at block {block} is not strictly positive; use epsilon regularization")]
    NonPositiveDiagonal { block: usize },

    #[error("a flip needs two distinct subsystems")]
    SameSubsystem,

    #[error("invalid options: {0}")]
    InvalidOptions(&'static str),

    #[error("decomposition needs at least one bipartition")]
    EmptyParts,

    #[error("unknown bipartition {0:?}")]
    UnknownBipartition(String),
}

pub type Result<T> = std::result::Result<T, Error>;
