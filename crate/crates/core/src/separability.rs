//! Per-bipartition separability of X-states.
//!
//! An X-state is separable across `s | rest` exactly when it has positive
//! partial transpose on `s`. For X-states that reduces to two inequalities,
//! one per pair of blocks in the bipartition's [`IndexPairing`].

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::matrix::Subsystem;
use crate::xstate::{XHermitian, XState};

/// Relative slack for closed inequalities on non-integral inputs.
pub const BOUNDARY_SLACK: f64 = 1e-12;

/// Tolerance of the PPT eigenvalue oracle.
pub const PPT_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Bipartition {
    /// A | BC
    #[serde(rename = "A-BC")]
    ABC,
    /// B | CA
    #[serde(rename = "B-CA")]
    BCA,
    /// C | AB
    #[serde(rename = "C-AB")]
    CAB,
}

/// Two disjoint pairs of 0-based block indices covering `{0, 1, 2, 3}`.
pub type IndexPairing = [[usize; 2]; 2];

impl Bipartition {
    pub const ALL: [Bipartition; 3] = [Bipartition::ABC, Bipartition::BCA, Bipartition::CAB];

    pub fn singleton(self) -> Subsystem {
        match self {
            Bipartition::ABC => Subsystem::A,
            Bipartition::BCA => Subsystem::B,
            Bipartition::CAB => Subsystem::C,
        }
    }

    pub fn from_singleton(s: Subsystem) -> Self {
        match s {
            Subsystem::A => Bipartition::ABC,
            Subsystem::B => Bipartition::BCA,
            Subsystem::C => Bipartition::CAB,
        }
    }

    pub fn index(self) -> usize {
        self.singleton().index()
    }

    /// Blocks `{1,4}|{2,3}`, `{1,3}|{2,4}` and `{1,2}|{3,4}` (1-based).
    pub fn pairing(self) -> IndexPairing {
        match self {
            Bipartition::ABC => [[0, 3], [1, 2]],
            Bipartition::BCA => [[0, 2], [1, 3]],
            Bipartition::CAB => [[0, 1], [2, 3]],
        }
    }

    /// Image under relabelling subsystems `s` and `t`.
    pub fn swapped(self, s: Subsystem, t: Subsystem) -> Self {
        let single = self.singleton();
        let image = if single == s {
            t
        } else if single == t {
            s
        } else {
            single
        };
        Self::from_singleton(image)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Bipartition::ABC => "A-BC",
            Bipartition::BCA => "B-CA",
            Bipartition::CAB => "C-AB",
        }
    }
}

impl fmt::Display for Bipartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Bipartition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "A-BC" | "A" | "A|BC" => Ok(Bipartition::ABC),
            "B-CA" | "B" | "B|CA" | "B-AC" => Ok(Bipartition::BCA),
            "C-AB" | "C" | "C|AB" => Ok(Bipartition::CAB),
            other => Err(Error::UnknownBipartition(other.to_string())),
        }
    }
}

/// Comparison slack for `x`: zero for integer data, `1e-12·(1 + trace)` otherwise.
pub(crate) fn boundary_slack(x: &XHermitian) -> f64 {
    if x.is_integral() {
        0.0
    } else {
        BOUNDARY_SLACK * (1.0 + x.trace().abs())
    }
}

fn pair_holds(x: &XHermitian, [i, j]: [usize; 2], slack: f64) -> bool {
    if slack == 0.0 {
        // integer data: compare squares, which is exact
        let caps = (x.a[i] * x.b[i]).min(x.a[j] * x.b[j]);
        let m = x.z[i].norm_sqr().max(x.z[j].norm_sqr());
        caps >= m
    } else {
        let g = x.geometric_means();
        let m = x.moduli();
        g[i].min(g[j]) >= m[i].max(m[j]) - slack
    }
}

/// Closed-form separability of `x` across `p`.
pub fn is_separable(x: &XState, p: Bipartition) -> bool {
    let slack = boundary_slack(x);
    p.pairing().iter().all(|&pair| pair_holds(x, pair, slack))
}

/// PPT oracle: partial transpose on the singleton of `p`, then an eigensolve.
pub fn is_ppt(x: &XState, p: Bipartition, tol: f64) -> bool {
    x.embed().partial_transpose(p.singleton()).is_psd(tol)
}

/// `[A-BC, B-CA, C-AB]` separability, always evaluating all three.
pub fn separability_profile(x: &XState) -> [bool; 3] {
    Bipartition::ALL.map(|p| is_separable(x, p))
}
