//! Seven-question membership vectors and the partial-separability class
//! labels they map to.
//!
//! Class index 1, 2, 3 marks the distinguished system A, B, C respectively.

use std::fmt;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::Result;
use crate::hull::{membership, DecomposeOptions, HullQuestion, Verdict, VerdictTag};
use crate::matrix::Subsystem;
use crate::separability::{separability_profile, Bipartition};
use crate::xstate::XState;

/// `sep` is indexed A-BC, B-CA, C-AB; `hulls` is indexed hull(B,C),
/// hull(C,A), hull(A,B), so position `k` of either refers to system `k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct MembershipVector {
    pub sep: [bool; 3],
    pub hulls: [VerdictTag; 3],
    pub hull_abc: VerdictTag,
}

impl MembershipVector {
    /// The vector of the state with subsystems `s` and `t` relabelled.
    pub fn swapped(&self, s: Subsystem, t: Subsystem) -> Self {
        let mut out = *self;
        for p in Bipartition::ALL {
            let image = p.swapped(s, t).index();
            out.sep[image] = self.sep[p.index()];
            out.hulls[image] = self.hulls[p.index()];
        }
        out
    }

    /// Implications every vector must satisfy.
    pub fn is_consistent(&self) -> bool {
        for k in 0..3 {
            if self.sep[k] {
                let others_in = (0..3).filter(|&j| j != k).all(|j| self.hulls[j] == VerdictTag::In);
                if !others_in || self.hull_abc != VerdictTag::In {
                    return false;
                }
            }
            // a hull marked Out contains neither constituent
            if self.hulls[k] == VerdictTag::Out && (0..3).any(|j| j != k && self.sep[j]) {
                return false;
            }
        }
        let any_in = self.hulls.contains(&VerdictTag::In);
        !any_in || self.hull_abc == VerdictTag::In
    }
}

impl fmt::Display for MembershipVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let b = |v: bool| if v { "T" } else { "F" };
        write!(
            f,
            "{},{},{}; {},{},{}; {}",
            b(self.sep[0]),
            b(self.sep[1]),
            b(self.sep[2]),
            self.hulls[0],
            self.hulls[1],
            self.hulls[2],
            self.hull_abc
        )
    }
}

impl Serialize for MembershipVector {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("MembershipVector", 7)?;
        st.serialize_field("sep_A", &self.sep[0])?;
        st.serialize_field("sep_B", &self.sep[1])?;
        st.serialize_field("sep_C", &self.sep[2])?;
        st.serialize_field("hull_BC", &self.hulls[0])?;
        st.serialize_field("hull_CA", &self.hulls[1])?;
        st.serialize_field("hull_AB", &self.hulls[2])?;
        st.serialize_field("hull_ABC", &self.hull_abc)?;
        st.end()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ClassLabel {
    C261,
    C262,
    C263,
    C24,
    C231,
    C232,
    C233,
    /// Decided, but none of the seven classes.
    OutOfScope(MembershipVector),
    /// Unknown verdicts leave more than one outcome possible.
    Undetermined(MembershipVector),
}

impl ClassLabel {
    fn six(k: usize) -> Self {
        [ClassLabel::C261, ClassLabel::C262, ClassLabel::C263][k]
    }

    fn three(k: usize) -> Self {
        [ClassLabel::C231, ClassLabel::C232, ClassLabel::C233][k]
    }

    /// Label of the flipped state, given this state's label.
    pub fn swapped(&self, s: Subsystem, t: Subsystem) -> Self {
        let image = |k: usize| Bipartition::ALL[k].swapped(s, t).index();
        match *self {
            ClassLabel::C261 => Self::six(image(0)),
            ClassLabel::C262 => Self::six(image(1)),
            ClassLabel::C263 => Self::six(image(2)),
            ClassLabel::C231 => Self::three(image(0)),
            ClassLabel::C232 => Self::three(image(1)),
            ClassLabel::C233 => Self::three(image(2)),
            ClassLabel::C24 => ClassLabel::C24,
            ClassLabel::OutOfScope(v) => ClassLabel::OutOfScope(v.swapped(s, t)),
            ClassLabel::Undetermined(v) => ClassLabel::Undetermined(v.swapped(s, t)),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            ClassLabel::C261 => "C-2-6-1",
            ClassLabel::C262 => "C-2-6-2",
            ClassLabel::C263 => "C-2-6-3",
            ClassLabel::C24 => "C-2-4",
            ClassLabel::C231 => "C-2-3-1",
            ClassLabel::C232 => "C-2-3-2",
            ClassLabel::C233 => "C-2-3-3",
            ClassLabel::OutOfScope(_) => "OutOfScope",
            ClassLabel::Undetermined(_) => "Undetermined",
        }
    }

    pub fn is_named_class(&self) -> bool {
        !matches!(self, ClassLabel::OutOfScope(_) | ClassLabel::Undetermined(_))
    }
}

impl fmt::Display for ClassLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassLabel::OutOfScope(v) | ClassLabel::Undetermined(v) => write!(f, "{}({v})", self.name()),
            _ => f.write_str(self.name()),
        }
    }
}

impl Serialize for ClassLabel {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(self.name())
    }
}

/// Table lookup for a vector without Unknown entries.
fn table(sep: [bool; 3], hulls: [bool; 3], hull_abc: bool) -> Option<ClassLabel> {
    if !hull_abc {
        return None;
    }
    let separable: Vec<usize> = (0..3).filter(|&k| sep[k]).collect();
    let outside: Vec<usize> = (0..3).filter(|&k| !hulls[k]).collect();
    match (separable.as_slice(), outside.as_slice()) {
        (&[k], []) => Some(ClassLabel::six(k)),
        ([], []) => Some(ClassLabel::C24),
        ([], &[k]) => Some(ClassLabel::three(k)),
        _ => None,
    }
}

/// Maps a vector to a label; Unknown entries are resolved only when every
/// way of filling them in gives the same answer.
pub fn label_for(v: &MembershipVector) -> ClassLabel {
    let slots: Vec<VerdictTag> = v.hulls.iter().copied().chain([v.hull_abc]).collect();
    let unknown: Vec<usize> = (0..4).filter(|&k| slots[k] == VerdictTag::Unknown).collect();
    let mut outcomes = Vec::new();
    for mask in 0u32..(1 << unknown.len()) {
        let mut filled: Vec<bool> = slots.iter().map(|&t| t == VerdictTag::In).collect();
        for (bit, &k) in unknown.iter().enumerate() {
            filled[k] = mask & (1 << bit) != 0;
        }
        outcomes.push(table(v.sep, [filled[0], filled[1], filled[2]], filled[3]));
    }
    let first = outcomes[0];
    if outcomes.iter().all(|o| *o == first) {
        first.unwrap_or(ClassLabel::OutOfScope(*v))
    } else {
        ClassLabel::Undetermined(*v)
    }
}

/// The vector together with the verdicts (and certificates) behind it.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Membership {
    pub vector: MembershipVector,
    /// hull(B,C), hull(C,A), hull(A,B)
    pub pairwise: [Verdict; 3],
    pub triple: Verdict,
}

impl Membership {
    pub fn label(&self) -> ClassLabel {
        label_for(&self.vector)
    }

    pub fn verdict(&self, q: HullQuestion) -> &Verdict {
        match q {
            HullQuestion::BC => &self.pairwise[0],
            HullQuestion::CA => &self.pairwise[1],
            HullQuestion::AB => &self.pairwise[2],
            HullQuestion::ABC => &self.triple,
        }
    }
}

pub fn membership_vector(x: &XState, opts: &DecomposeOptions) -> Result<Membership> {
    let sep = separability_profile(x);
    let pairwise = [
        membership(x, HullQuestion::BC, opts)?,
        membership(x, HullQuestion::CA, opts)?,
        membership(x, HullQuestion::AB, opts)?,
    ];
    // a certificate for any pairwise hull also certifies biseparability
    let triple = match pairwise.iter().find(|v| v.tag() == VerdictTag::In) {
        Some(v) => v.clone(),
        None => membership(x, HullQuestion::ABC, opts)?,
    };
    let vector = MembershipVector {
        sep,
        hulls: [pairwise[0].tag(), pairwise[1].tag(), pairwise[2].tag()],
        hull_abc: triple.tag(),
    };
    Ok(Membership {
        vector,
        pairwise,
        triple,
    })
}

pub fn classify(x: &XState, opts: &DecomposeOptions) -> Result<ClassLabel> {
    Ok(membership_vector(x, opts)?.label())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gallery;
    use VerdictTag::{In, Out, Unknown};

    fn v(sep: [bool; 3], hulls: [VerdictTag; 3], hull_abc: VerdictTag) -> MembershipVector {
        MembershipVector { sep, hulls, hull_abc }
    }

    #[test]
    fn table_entries() {
        let f = false;
        assert_eq!(label_for(&v([true, f, f], [In, In, In], In)), ClassLabel::C261);
        assert_eq!(label_for(&v([f, true, f], [In, In, In], In)), ClassLabel::C262);
        assert_eq!(label_for(&v([f, f, true], [In, In, In], In)), ClassLabel::C263);
        assert_eq!(label_for(&v([f; 3], [In, In, In], In)), ClassLabel::C24);
        assert_eq!(label_for(&v([f; 3], [Out, In, In], In)), ClassLabel::C231);
        assert_eq!(label_for(&v([f; 3], [In, Out, In], In)), ClassLabel::C232);
        assert_eq!(label_for(&v([f; 3], [In, In, Out], In)), ClassLabel::C233);
    }

    #[test]
    fn fallbacks() {
        let f = false;
        let all_sep = v([true; 3], [In, In, In], In);
        assert_eq!(label_for(&all_sep), ClassLabel::OutOfScope(all_sep));
        let two_out = v([f; 3], [Out, Out, In], In);
        assert_eq!(label_for(&two_out), ClassLabel::OutOfScope(two_out));
        let component = v([true, f, f], [Out, In, In], In);
        assert_eq!(label_for(&component), ClassLabel::OutOfScope(component));
        let open = v([f; 3], [Out, Unknown, In], In);
        assert_eq!(label_for(&open), ClassLabel::Undetermined(open));
        // both completions fall outside the table
        let closed = v([f; 3], [Out, Out, Unknown], In);
        assert_eq!(label_for(&closed), ClassLabel::OutOfScope(closed));
        // the triple hull's verdict cannot change a C-2-4 answer once pairwise are In
        assert_eq!(label_for(&v([f; 3], [In, In, In], Unknown)), ClassLabel::Undetermined(v([f; 3], [In, In, In], Unknown)));
    }

    #[test]
    fn paper_vectors_and_labels() {
        let opts = DecomposeOptions::default();
        let m1 = membership_vector(&gallery::rho1(), &opts).unwrap();
        assert_eq!(m1.vector, v([true, false, false], [In, In, In], In));
        assert_eq!(m1.label(), ClassLabel::C261);
        let m2 = membership_vector(&gallery::rho2(), &opts).unwrap();
        assert_eq!(m2.vector, v([false; 3], [In, In, In], In));
        assert_eq!(m2.label(), ClassLabel::C24);
        let m3 = membership_vector(&gallery::rho3(), &opts).unwrap();
        assert_eq!(m3.vector, v([false; 3], [Out, In, In], In));
        assert_eq!(m3.label(), ClassLabel::C231);
    }

    #[test]
    fn flipped_rho1_labels() {
        let opts = DecomposeOptions::default();
        let ab = gallery::rho1().flip(Subsystem::A, Subsystem::B).unwrap();
        assert_eq!(classify(&ab, &opts).unwrap(), ClassLabel::C262);
        let ac = gallery::rho1().flip(Subsystem::A, Subsystem::C).unwrap();
        assert_eq!(classify(&ac, &opts).unwrap(), ClassLabel::C263);
    }

    #[test]
    fn label_swap_matches_vector_swap() {
        let f = false;
        let x = v([true, f, f], [In, In, In], In);
        assert_eq!(label_for(&x).swapped(Subsystem::A, Subsystem::B), ClassLabel::C262);
        assert_eq!(label_for(&x.swapped(Subsystem::A, Subsystem::B)), ClassLabel::C262);
        assert_eq!(ClassLabel::C232.swapped(Subsystem::B, Subsystem::C), ClassLabel::C233);
        assert_eq!(ClassLabel::C24.swapped(Subsystem::A, Subsystem::C), ClassLabel::C24);
    }

    #[test]
    fn consistency_checks() {
        let f = false;
        assert!(v([true, f, f], [In, In, In], In).is_consistent());
        assert!(!v([true, f, f], [In, Out, In], In).is_consistent());
        assert!(!v([f; 3], [In, In, In], Unknown).is_consistent());
        assert!(v([f; 3], [Out, Out, Out], Unknown).is_consistent());
    }
}
