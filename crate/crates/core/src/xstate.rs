//! X-shaped three-qubit matrices `X(a, b, z)`.
//!
//! Block `i` (1-based in the usual notation, 0-based here) couples row `i`
//! with row `7 - i`: `a[i]` sits at `(i, i)`, `b[i]` at `(7-i, 7-i)` and
//! `z[i]` at `(i, 7-i)`, with `conj(z[i])` mirrored below the antidiagonal.

use std::ops::{Add, Deref, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{HermitianMatrix8, Subsystem, DIM};
use crate::random::Sampler;

/// X-shaped Hermitian matrix with no positivity requirement.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(from = "XDocument", into = "XDocument")]
pub struct XHermitian {
    pub a: [f64; 4],
    pub b: [f64; 4],
    pub z: [Complex64; 4],
}

/// On-disk shape: `{"a": [..4], "b": [..4], "z": [[re, im]; 4]}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct XDocument {
    pub a: [f64; 4],
    pub b: [f64; 4],
    pub z: [[f64; 2]; 4],
}

impl From<XDocument> for XHermitian {
    fn from(d: XDocument) -> Self {
        XHermitian {
            a: d.a,
            b: d.b,
            z: d.z.map(|[re, im]| Complex64::new(re, im)),
        }
    }
}

impl From<XHermitian> for XDocument {
    fn from(x: XHermitian) -> Self {
        XDocument {
            a: x.a,
            b: x.b,
            z: x.z.map(|z| [z.re, z.im]),
        }
    }
}

impl XHermitian {
    pub fn new(a: [f64; 4], b: [f64; 4], z: [Complex64; 4]) -> Self {
        Self { a, b, z }
    }

    /// Real antidiagonal, which covers every hand-written example.
    pub fn real(a: [f64; 4], b: [f64; 4], z: [f64; 4]) -> Self {
        Self::new(a, b, z.map(|re| Complex64::new(re, 0.0)))
    }

    pub fn zeros() -> Self {
        Self::real([0.0; 4], [0.0; 4], [0.0; 4])
    }

    /// `X(1,1,0)`, the identity matrix.
    pub fn identity() -> Self {
        Self::real([1.0; 4], [1.0; 4], [0.0; 4])
    }

    pub fn trace(&self) -> f64 {
        self.a.iter().chain(&self.b).sum()
    }

    pub fn scale(&self, factor: f64) -> Self {
        Self {
            a: self.a.map(|v| v * factor),
            b: self.b.map(|v| v * factor),
            z: self.z.map(|v| v * factor),
        }
    }

    /// `√(a_i b_i)` per block, with tiny negative products clamped to zero.
    pub fn geometric_means(&self) -> [f64; 4] {
        std::array::from_fn(|i| (self.a[i] * self.b[i]).max(0.0).sqrt())
    }

    pub fn moduli(&self) -> [f64; 4] {
        self.z.map(|z| z.norm())
    }

    /// All entries (real and imaginary parts) are integers.
    pub fn is_integral(&self) -> bool {
        let int = |v: f64| v.is_finite() && v.fract() == 0.0;
        self.a.iter().chain(&self.b).all(|&v| int(v))
            && self.z.iter().all(|z| int(z.re) && int(z.im))
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let diag = self
            .a
            .iter()
            .zip(&other.a)
            .chain(self.b.iter().zip(&other.b))
            .map(|(x, y)| (x - y).abs());
        let anti = self.z.iter().zip(&other.z).map(|(x, y)| (x - y).norm());
        diag.chain(anti).fold(0.0, f64::max)
    }

    /// PSD test through the four 2×2 blocks.
    pub fn validate(&self, tol: f64) -> bool {
        self.first_violated_block(tol).is_none()
    }

    fn first_violated_block(&self, tol: f64) -> Option<usize> {
        (0..4).find(|&i| {
            let (a, b) = (self.a[i], self.b[i]);
            let det = a * b - self.z[i].norm_sqr();
            a < -tol || b < -tol || det < -tol * 1f64.max(a + b)
        })
    }

    pub fn embed(&self) -> HermitianMatrix8 {
        let mut e = [[Complex64::new(0.0, 0.0); DIM]; DIM];
        for i in 0..4 {
            let j = DIM - 1 - i;
            e[i][i] = Complex64::new(self.a[i], 0.0);
            e[j][j] = Complex64::new(self.b[i], 0.0);
            e[i][j] = self.z[i];
            e[j][i] = self.z[i].conj();
        }
        HermitianMatrix8::symmetrized(e)
    }

    /// Reads the diagonal and antidiagonal, discarding everything else.
    pub fn x_part(m: &HermitianMatrix8) -> Self {
        let mut x = Self::zeros();
        for i in 0..4 {
            let j = DIM - 1 - i;
            x.a[i] = m[(i, i)].re;
            x.b[i] = m[(j, j)].re;
            x.z[i] = m[(i, j)];
        }
        x
    }

    /// Relabels subsystems `s` and `t`.
    pub fn flip(&self, s: Subsystem, t: Subsystem) -> Result<Self> {
        if s == t {
            return Err(Error::SameSubsystem);
        }
        Ok(Self::x_part(&self.embed().permute_subsystems(s, t)))
    }

    /// Divides by the trace; `None` for a zero-trace matrix.
    pub fn normalize(&self) -> Option<Self> {
        let tr = self.trace();
        (tr != 0.0).then(|| self.scale(1.0 / tr))
    }
}

impl Add for XHermitian {
    type Output = Self;

    fn add(self, rhs: Self) -> Self {
        Self {
            a: std::array::from_fn(|i| self.a[i] + rhs.a[i]),
            b: std::array::from_fn(|i| self.b[i] + rhs.b[i]),
            z: std::array::from_fn(|i| self.z[i] + rhs.z[i]),
        }
    }
}

impl Sub for XHermitian {
    type Output = Self;

    fn sub(self, rhs: Self) -> Self {
        self + rhs.scale(-1.0)
    }
}

impl std::iter::Sum for XHermitian {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::zeros(), |acc, x| acc + x)
    }
}

/// A positive semidefinite X-shaped matrix. Traces are not normalized.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(transparent)]
pub struct XState(XHermitian);

impl XState {
    /// Checks positivity block by block with tolerance `tol`.
    pub fn new(x: XHermitian, tol: f64) -> Result<Self> {
        match x.first_violated_block(tol) {
            None => Ok(Self(x)),
            Some(i) => Err(Error::NotPsd {
                block: i + 1,
                a: x.a[i],
                b: x.b[i],
                z_norm_sqr: x.z[i].norm_sqr(),
            }),
        }
    }

    /// Exact positivity (tolerance zero).
    pub fn exact(x: XHermitian) -> Result<Self> {
        Self::new(x, 0.0)
    }

    pub(crate) fn new_unchecked(x: XHermitian) -> Self {
        Self(x)
    }

    pub fn real(a: [f64; 4], b: [f64; 4], z: [f64; 4]) -> Result<Self> {
        Self::exact(XHermitian::real(a, b, z))
    }

    pub fn identity() -> Self {
        Self(XHermitian::identity())
    }

    /// X-part of the GHZ projector: `1/2` on the four corners of the matrix.
    pub fn ghz() -> Self {
        Self(XHermitian::real([0.5, 0.0, 0.0, 0.0], [0.5, 0.0, 0.0, 0.0], [0.5, 0.0, 0.0, 0.0]))
    }

    pub fn as_hermitian(&self) -> &XHermitian {
        &self.0
    }

    pub fn into_hermitian(self) -> XHermitian {
        self.0
    }

    pub fn scale(&self, factor: f64) -> Self {
        assert!(factor >= 0.0, "negative multiples are not states");
        Self(self.0.scale(factor))
    }

    pub fn flip(&self, s: Subsystem, t: Subsystem) -> Result<Self> {
        self.0.flip(s, t).map(Self)
    }

    pub fn normalize(&self) -> Option<Self> {
        self.0.normalize().map(Self)
    }

    /// `self + eps·I`.
    pub fn regularize(&self, eps: f64) -> Self {
        assert!(eps >= 0.0);
        Self(self.0 + XHermitian::identity().scale(eps))
    }
}

impl Deref for XState {
    type Target = XHermitian;

    fn deref(&self) -> &XHermitian {
        &self.0
    }
}

impl Add for XState {
    type Output = Self;

    fn add(self, rhs: Self) -> Self {
        Self(self.0 + rhs.0)
    }
}

impl From<XState> for XHermitian {
    fn from(x: XState) -> Self {
        x.0
    }
}

/// Valid state drawn deterministically from `seed`; entries scale with `scale`.
pub fn random_xstate(seed: u64, scale: f64) -> XState {
    Sampler::new(seed, scale).valid()
}

/// Like [`random_xstate`] but `|z_i|` is drawn in `[0, scale]`, so the
/// result is frequently not positive.
pub fn random_xhermitian(seed: u64, scale: f64) -> XHermitian {
    Sampler::new(seed, scale).adversarial()
}
