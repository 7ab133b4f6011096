//! The fifteen explicit X-states of the construction: the three composites
//! `rho1`, `rho2`, `rho3` and the components their decompositions use.

use crate::classifier::{ClassLabel, MembershipVector};
use crate::hull::{Component, Decomposition, VerdictTag};
use crate::separability::Bipartition;
use crate::xstate::XState;

use Bipartition::{ABC, BCA, CAB};
use VerdictTag::{In, Out};

#[derive(Debug, Clone)]
pub struct GalleryEntry {
    pub name: &'static str,
    pub state: XState,
    /// Bipartitions the construction states this entry is separable for.
    pub separable_for: Vec<Bipartition>,
    pub expected: MembershipVector,
    pub label: ClassLabel,
    /// Names of components, by bipartition, for each displayed decomposition.
    pub decompositions: Vec<Vec<(Bipartition, &'static str)>>,
}

fn x(a: [f64; 4], b: [f64; 4], z: [f64; 4]) -> XState {
    XState::real(a, b, z).expect("gallery states are positive")
}

pub fn rho1() -> XState {
    x([0., 1., 1., 2.], [0., 1., 1., 2.], [0., 1., 1., 0.])
}

pub fn rho2() -> XState {
    x([0., 2., 2., 2.], [0., 2., 2., 2.], [0., 1., 1., 1.])
}

pub fn rho3() -> XState {
    x([0., 2., 3., 1.], [0., 2., 3., 1.], [0., 2., 1., 1.])
}

/// `[A-BC, B-CA, C-AB]` separability bits and `[BC, CA, AB]` hull tags.
fn vector(sep: [bool; 3], hulls: [VerdictTag; 3]) -> MembershipVector {
    MembershipVector {
        sep,
        hulls,
        hull_abc: In,
    }
}

pub fn gallery() -> Vec<GalleryEntry> {
    // every component is separable for exactly one bipartition and lies
    // outside the hull of the other two
    let component = |name, state, p: Bipartition| {
        let mut sep = [false; 3];
        sep[p.index()] = true;
        let mut hulls = [In; 3];
        hulls[p.index()] = Out;
        let expected = vector(sep, hulls);
        GalleryEntry {
            name,
            state,
            separable_for: vec![p],
            expected,
            label: ClassLabel::OutOfScope(expected),
            decompositions: vec![],
        }
    };
    vec![
        GalleryEntry {
            name: "rho1",
            state: rho1(),
            separable_for: vec![ABC],
            expected: vector([true, false, false], [In, In, In]),
            label: ClassLabel::C261,
            decompositions: vec![vec![(BCA, "rho1B"), (CAB, "rho1C")]],
        },
        component("rho1B", x([0., 1., 0., 1.], [0., 1., 0., 1.], [0., 1., 0., 0.]), BCA),
        component("rho1C", x([0., 0., 1., 1.], [0., 0., 1., 1.], [0., 0., 1., 0.]), CAB),
        GalleryEntry {
            name: "rho2",
            state: rho2(),
            separable_for: vec![],
            expected: vector([false; 3], [In, In, In]),
            label: ClassLabel::C24,
            decompositions: vec![
                vec![(ABC, "rho2A0"), (BCA, "rho2B0")],
                vec![(BCA, "rho2B1"), (CAB, "rho2C1")],
                vec![(CAB, "rho2C0"), (ABC, "rho2A1")],
            ],
        },
        component("rho2A0", x([0., 1., 2., 0.], [0., 1., 2., 0.], [0., 1., 1., 0.]), ABC),
        component("rho2A1", x([0., 2., 1., 0.], [0., 2., 1., 0.], [0., 1., 1., 0.]), ABC),
        component("rho2B0", x([0., 1., 0., 2.], [0., 1., 0., 2.], [0., 0., 0., 1.]), BCA),
        component("rho2B1", x([0., 2., 0., 1.], [0., 2., 0., 1.], [0., 1., 0., 0.]), BCA),
        component("rho2C0", x([0., 0., 1., 2.], [0., 0., 1., 2.], [0., 0., 0., 1.]), CAB),
        component("rho2C1", x([0., 0., 2., 1.], [0., 0., 2., 1.], [0., 0., 1., 1.]), CAB),
        GalleryEntry {
            name: "rho3",
            state: rho3(),
            separable_for: vec![],
            expected: vector([false; 3], [Out, In, In]),
            label: ClassLabel::C231,
            decompositions: vec![
                vec![(ABC, "rho3A0"), (BCA, "rho3B")],
                vec![(ABC, "rho3A1"), (CAB, "rho3C")],
            ],
        },
        component("rho3A0", x([0., 1., 3., 0.], [0., 1., 3., 0.], [0., 1., 1., 0.]), ABC),
        component("rho3A1", x([0., 2., 2., 0.], [0., 2., 2., 0.], [0., 2., 0., 0.]), ABC),
        component("rho3B", x([0., 1., 0., 1.], [0., 1., 0., 1.], [0., 1., 0., 1.]), BCA),
        component("rho3C", x([0., 0., 1., 1.], [0., 0., 1., 1.], [0., 0., 1., 1.]), CAB),
    ]
}

pub fn by_name(name: &str) -> Option<GalleryEntry> {
    gallery().into_iter().find(|e| e.name == name)
}

pub fn names() -> Vec<&'static str> {
    gallery().iter().map(|e| e.name).collect()
}

/// Every displayed decomposition as `(composite, certificate)`.
pub fn paper_decompositions() -> Vec<(XState, Decomposition)> {
    let entries = gallery();
    let lookup = |name: &str| entries.iter().find(|e| e.name == name).expect("component exists").state;
    entries
        .iter()
        .flat_map(|e| {
            e.decompositions.iter().map(|d| {
                let components = d
                    .iter()
                    .map(|&(bipartition, name)| Component {
                        bipartition,
                        xstate: lookup(name),
                    })
                    .collect();
                (e.state, Decomposition { components })
            })
        })
        .collect()
}
