//! Partial separability of three-qubit X-states.
//!
//! Exact per-bipartition separability tests, X-shaped entanglement
//! witnesses, certified membership in convex hulls of bipartition-separable
//! sets, and the assignment of the resulting membership pattern to the
//! seven biseparable classes `C-2-6-k`, `C-2-4` and `C-2-3-k`.

pub mod classifier;
pub mod error;
mod flow;
pub mod gallery;
pub mod hull;
pub mod matrix;
pub mod random;
pub mod separability;
pub mod witness;
pub mod xstate;

pub use classifier::{classify, label_for, membership_vector, ClassLabel, Membership, MembershipVector};
pub use error::{Error, Result};
pub use hull::{
    decompose, membership, mixture_necessary, DecomposeOptions, Decomposition, HullQuestion, OutCertificate,
    Verdict, VerdictTag,
};
pub use matrix::{HermitianMatrix8, Subsystem};
pub use separability::{is_ppt, is_separable, separability_profile, Bipartition};
pub use witness::{lemma_witnesses, WitnessScope, XWitness};
pub use xstate::{random_xhermitian, random_xstate, XHermitian, XState};
