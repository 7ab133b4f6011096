//! X-shaped entanglement witnesses `W = X(s, t, u)`.
//!
//! `W` is nonnegative on every state separable across `p` iff, for each pair
//! `{i, j}` of `p`'s index pairing, `√(s_i t_i) + √(s_j t_j) >= |u_i| + |u_j|`.
//! The pairing with states is the bilinear `⟨W, ρ⟩ = Tr(Wᵗ ρ)`.

use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::Subsystem;
use crate::separability::{Bipartition, BOUNDARY_SLACK};
use crate::xstate::{XHermitian, XState};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct XWitness(XHermitian);

/// Serialized as `{"s": [..4], "t": [..4], "u": [[re, im]; 4]}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WitnessDocument {
    pub s: [f64; 4],
    pub t: [f64; 4],
    pub u: [[f64; 2]; 4],
}

impl XWitness {
    pub fn new(w: XHermitian) -> Result<Self> {
        match (0..8).find(|&k| if k < 4 { w.a[k] < 0.0 } else { w.b[k - 4] < 0.0 }) {
            Some(k) => Err(Error::NegativeWitnessDiagonal { index: k % 4 + 1 }),
            None => Ok(Self(w)),
        }
    }

    pub fn s(&self) -> &[f64; 4] {
        &self.0.a
    }

    pub fn t(&self) -> &[f64; 4] {
        &self.0.b
    }

    pub fn u(&self) -> &[Complex64; 4] {
        &self.0.z
    }

    pub fn as_hermitian(&self) -> &XHermitian {
        &self.0
    }

    pub fn flip(&self, s: Subsystem, t: Subsystem) -> Result<Self> {
        self.0.flip(s, t).map(Self)
    }

    /// Closed-form `Tr(Wᵗ x) = Σ s_i a_i + t_i b_i + 2 Re(u_i z_i)`.
    pub fn pairing(&self, x: &XHermitian) -> f64 {
        (0..4)
            .map(|i| self.0.a[i] * x.a[i] + self.0.b[i] * x.b[i] + 2.0 * (self.0.z[i] * x.z[i]).re)
            .sum()
    }

    pub fn is_block_positive(&self, p: Bipartition) -> bool {
        let g = self.0.geometric_means();
        let m = self.0.moduli();
        let slack = BOUNDARY_SLACK * (1.0 + self.0.trace());
        p.pairing()
            .iter()
            .all(|&[i, j]| g[i] + g[j] >= m[i] + m[j] - slack)
    }

    pub fn is_valid_for(&self, scope: WitnessScope) -> bool {
        scope.parts().iter().all(|&p| self.is_block_positive(p))
    }
}

impl From<WitnessDocument> for XHermitian {
    fn from(d: WitnessDocument) -> Self {
        XHermitian::new(d.s, d.t, d.u.map(|[re, im]| Complex64::new(re, im)))
    }
}

impl From<XWitness> for WitnessDocument {
    fn from(w: XWitness) -> Self {
        WitnessDocument {
            s: w.0.a,
            t: w.0.b,
            u: w.0.z.map(|z| [z.re, z.im]),
        }
    }
}

impl TryFrom<WitnessDocument> for XWitness {
    type Error = Error;

    fn try_from(d: WitnessDocument) -> Result<Self> {
        XWitness::new(d.into())
    }
}

impl Serialize for XWitness {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        WitnessDocument::from(*self).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for XWitness {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let doc = WitnessDocument::deserialize(deserializer)?;
        XWitness::try_from(doc).map_err(serde::de::Error::custom)
    }
}

/// The convex set a witness is tested against.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum WitnessScope {
    Single(Bipartition),
    /// Mixtures of states separable across either of the two bipartitions.
    Hull(Bipartition, Bipartition),
}

impl WitnessScope {
    pub const ALL: [WitnessScope; 6] = [
        WitnessScope::Single(Bipartition::ABC),
        WitnessScope::Single(Bipartition::BCA),
        WitnessScope::Single(Bipartition::CAB),
        WitnessScope::Hull(Bipartition::BCA, Bipartition::CAB),
        WitnessScope::Hull(Bipartition::CAB, Bipartition::ABC),
        WitnessScope::Hull(Bipartition::ABC, Bipartition::BCA),
    ];

    pub fn parts(&self) -> Vec<Bipartition> {
        match *self {
            WitnessScope::Single(p) => vec![p],
            WitnessScope::Hull(p, q) => vec![p, q],
        }
    }
}

impl fmt::Display for WitnessScope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WitnessScope::Single(p) => write!(f, "{p}"),
            WitnessScope::Hull(p, q) => write!(f, "hull({}, {})", p.singleton(), q.singleton()),
        }
    }
}

/// `-e^{-i arg z}`, with the phase of zero taken as zero.
fn cancelling_phase(z: Complex64) -> Complex64 {
    let theta = if z == Complex64::new(0.0, 0.0) { 0.0 } else { z.arg() };
    -Complex64::from_polar(1.0, -theta)
}

/// The two witnesses `(W1, W2)` that detect states outside the hull of the
/// B-CA and C-AB separable sets.
///
/// `½⟨W1, x⟩ = √(a₂b₂) + √(a₃b₃) − |z₁| − |z₄|` and
/// `½⟨W2, x⟩ = √(a₁b₁) + √(a₄b₄) − |z₂| − |z₃|`. Both are block-positive
/// for B-CA and for C-AB. All diagonal entries of `x` must be positive; for
/// boundary states build them from [`XState::regularize`]d input.
pub fn lemma_witnesses(x: &XState) -> Result<(XWitness, XWitness)> {
    if let Some(i) = (0..4).find(|&i| x.a[i] <= 0.0 || x.b[i] <= 0.0) {
        return Err(Error::NonPositiveDiagonal { block: i + 1 });
    }
    let ratio = |i: usize| (x.b[i] / x.a[i]).sqrt();
    let inverse = |i: usize| (x.a[i] / x.b[i]).sqrt();
    let zero = Complex64::new(0.0, 0.0);
    let w1 = XHermitian::new(
        [0.0, ratio(1), ratio(2), 0.0],
        [0.0, inverse(1), inverse(2), 0.0],
        [cancelling_phase(x.z[0]), zero, zero, cancelling_phase(x.z[3])],
    );
    let w2 = XHermitian::new(
        [ratio(0), 0.0, 0.0, ratio(3)],
        [inverse(0), 0.0, 0.0, inverse(3)],
        [zero, cancelling_phase(x.z[1]), cancelling_phase(x.z[2]), zero],
    );
    Ok((XWitness(w1), XWitness(w2)))
}

/// Default regularization `1e-8 · trace` (or `1e-8` for a zero-trace input).
pub fn default_epsilon(x: &XHermitian) -> f64 {
    let tr = x.trace();
    1e-8 * if tr > 0.0 { tr } else { 1.0 }
}

/// [`lemma_witnesses`] for the hull of the two bipartitions other than
/// `excluded`, built from `x + eps·I`.
///
/// With `excluded = A-BC` this is the regularized `(W1, W2)`; the other two
/// are transported by the flips exchanging A with B and A with C.
pub fn hull_witnesses(x: &XState, excluded: Bipartition, eps: f64) -> Result<(XWitness, XWitness)> {
    let flip = match excluded {
        Bipartition::ABC => None,
        Bipartition::BCA => Some((Subsystem::A, Subsystem::B)),
        Bipartition::CAB => Some((Subsystem::A, Subsystem::C)),
    };
    let regular = x.regularize(eps);
    match flip {
        None => lemma_witnesses(&regular),
        Some((s, t)) => {
            let (w1, w2) = lemma_witnesses(&regular.flip(s, t)?)?;
            Ok((w1.flip(s, t)?, w2.flip(s, t)?))
        }
    }
}
