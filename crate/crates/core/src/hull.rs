//! Membership in convex hulls of bipartition-separable X-states.
//!
//! Non-membership in a pairwise hull is certified by a violated necessary
//! inequality (plus, when it can be built, a witness with negative pairing).
//! Membership is certified by an explicit decomposition into X-shaped
//! components, each separable for its label.
//!
//! The decomposition search is exact. Aligning every component's
//! antidiagonal with the target phase and splitting each diagonal pair
//! `(a_i, b_i)` proportionally loses no generality, after which a component
//! separable across `p` is described by one weight per pair `{i, j}` of
//! `p`'s index pairing: its share of `√(a_i b_i)` and `√(a_j b_j)` must be at
//! least the weight, and its share of `|z_i|` and `|z_j|` at most the weight.
//! Feasibility then becomes `|z_i| <= Σ_{e ∋ i} w_e <= √(a_i b_i)` on the
//! graph whose edges are the pairs of the allowed bipartitions, which
//! [`crate::flow`] decides.

use std::fmt;

use num_complex::Complex64;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::flow::{degree_interval_weights, FlowOutcome};
use crate::gallery;
use crate::matrix::Subsystem;
use crate::separability::{boundary_slack, is_separable, Bipartition, BOUNDARY_SLACK};
use crate::witness::{default_epsilon, hull_witnesses, WitnessScope, XWitness};
use crate::xstate::{XHermitian, XState};

/// Minimum violation for an Out certificate to count.
pub const OUT_MARGIN: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum HullQuestion {
    /// Mixtures of B-CA or C-AB separable states.
    BC,
    /// Mixtures of C-AB or A-BC separable states.
    CA,
    /// Mixtures of A-BC or B-CA separable states.
    AB,
    /// Biseparable: mixtures over all three bipartitions.
    ABC,
}

impl HullQuestion {
    pub const ALL: [HullQuestion; 4] = [HullQuestion::BC, HullQuestion::CA, HullQuestion::AB, HullQuestion::ABC];
    pub const PAIRWISE: [HullQuestion; 3] = [HullQuestion::BC, HullQuestion::CA, HullQuestion::AB];

    pub fn parts(self) -> &'static [Bipartition] {
        use Bipartition::*;
        match self {
            HullQuestion::BC => &[BCA, CAB],
            HullQuestion::CA => &[CAB, ABC],
            HullQuestion::AB => &[ABC, BCA],
            HullQuestion::ABC => &[ABC, BCA, CAB],
        }
    }

    /// The bipartition left out of a pairwise hull.
    pub fn excluded(self) -> Option<Bipartition> {
        match self {
            HullQuestion::BC => Some(Bipartition::ABC),
            HullQuestion::CA => Some(Bipartition::BCA),
            HullQuestion::AB => Some(Bipartition::CAB),
            HullQuestion::ABC => None,
        }
    }

    /// Pairwise hull missing `p`.
    pub fn without(p: Bipartition) -> Self {
        match p {
            Bipartition::ABC => HullQuestion::BC,
            Bipartition::BCA => HullQuestion::CA,
            Bipartition::CAB => HullQuestion::AB,
        }
    }

    /// Roman numeral of the necessary condition: (i) for BC, (ii) for CA, (iii) for AB.
    pub fn condition(self) -> Option<&'static str> {
        match self {
            HullQuestion::BC => Some("(i)"),
            HullQuestion::CA => Some("(ii)"),
            HullQuestion::AB => Some("(iii)"),
            HullQuestion::ABC => None,
        }
    }

    pub fn swapped(self, s: Subsystem, t: Subsystem) -> Self {
        match self.excluded() {
            Some(p) => Self::without(p.swapped(s, t)),
            None => self,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            HullQuestion::BC => "hull(B,C)",
            HullQuestion::CA => "hull(C,A)",
            HullQuestion::AB => "hull(A,B)",
            HullQuestion::ABC => "hull(A,B,C)",
        }
    }
}

impl fmt::Display for HullQuestion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl Serialize for HullQuestion {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(self.as_str())
    }
}

/// Both sides `(min, max)` of the necessary condition for a pairwise hull:
/// `min{√(a_i b_i) + √(a_j b_j), √(a_k b_k) + √(a_l b_l)}` against
/// `max{|z_i| + |z_j|, |z_k| + |z_l|}`, with `{i,j}|{k,l}` the pairing of the
/// excluded bipartition.
pub fn lemma_sides(x: &XHermitian, q: HullQuestion) -> Option<(f64, f64)> {
    let [[i, j], [k, l]] = q.excluded()?.pairing();
    let g = x.geometric_means();
    let m = x.moduli();
    Some(((g[i] + g[j]).min(g[k] + g[l]), (m[i] + m[j]).max(m[k] + m[l])))
}

/// Necessary condition for `x` (any state's X-part) to lie in the hull.
/// `false` proves non-membership; the triple hull has no such test.
pub fn mixture_necessary(x: &XHermitian, q: HullQuestion) -> bool {
    match lemma_sides(x, q) {
        None => true,
        Some((lhs, rhs)) => lhs >= rhs - BOUNDARY_SLACK * (1.0 + x.trace().abs()),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Component {
    pub bipartition: Bipartition,
    pub xstate: XState,
}

/// Components summing to the queried state.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Decomposition {
    pub components: Vec<Component>,
}

impl Decomposition {
    pub fn sum(&self) -> XHermitian {
        self.components.iter().map(|c| *c.xstate.as_hermitian()).sum()
    }

    /// Entrywise sum within `tol·max(1, trace)`, every component PSD within
    /// `tol` and separable for its label.
    pub fn verify(&self, x: &XHermitian, tol: f64) -> bool {
        let scale = 1f64.max(x.trace());
        !self.components.is_empty()
            && self.sum().max_abs_diff(x) <= tol * scale
            && self
                .components
                .iter()
                .all(|c| c.xstate.validate(tol) && is_separable(&c.xstate, c.bipartition))
    }

    pub fn labels(&self) -> Vec<Bipartition> {
        self.components.iter().map(|c| c.bipartition).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WitnessEvidence {
    pub witness: XWitness,
    pub pairing: f64,
}

/// A violated necessary condition.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OutCertificate {
    pub condition: &'static str,
    pub lhs: f64,
    pub rhs: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessEvidence>,
}

impl OutCertificate {
    pub fn margin(&self) -> f64 {
        self.rhs - self.lhs
    }

    /// Recomputes the inequality and re-checks the witness, if any.
    pub fn verify(&self, x: &XHermitian, q: HullQuestion) -> bool {
        let Some((lhs, rhs)) = lemma_sides(x, q) else {
            return false;
        };
        let sides_match = lhs == self.lhs && rhs == self.rhs && Some(self.condition) == q.condition();
        let witness_ok = self.witness.as_ref().is_none_or(|ev| {
            let scope = WitnessScope::Hull(q.parts()[0], q.parts()[1]);
            ev.witness.is_valid_for(scope) && ev.witness.pairing(x) < 0.0
        });
        sides_match && rhs - lhs > OUT_MARGIN && witness_ok
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Diagnostics {
    pub reason: String,
    pub augmenting_paths: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub shortfall: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "tag")]
pub enum Verdict {
    In(Decomposition),
    Out(OutCertificate),
    Unknown(Diagnostics),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum VerdictTag {
    In,
    Out,
    Unknown,
}

impl fmt::Display for VerdictTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            VerdictTag::In => "In",
            VerdictTag::Out => "Out",
            VerdictTag::Unknown => "Unknown",
        })
    }
}

impl Verdict {
    pub fn tag(&self) -> VerdictTag {
        match self {
            Verdict::In(_) => VerdictTag::In,
            Verdict::Out(_) => VerdictTag::Out,
            Verdict::Unknown(_) => VerdictTag::Unknown,
        }
    }

    /// In certificates must use only the question's bipartitions.
    pub fn verify(&self, x: &XHermitian, q: HullQuestion, tol: f64) -> bool {
        match self {
            Verdict::In(d) => d.verify(x, tol) && d.labels().iter().all(|p| q.parts().contains(p)),
            Verdict::Out(c) => c.verify(x, q),
            Verdict::Unknown(_) => true,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DecomposeOptions {
    /// Verification tolerance for certificates.
    pub tolerance: f64,
    /// Augmenting-path budget of the flow search.
    pub max_iterations: usize,
    /// Accepted for interface stability; the flow search is deterministic.
    pub restarts: usize,
    pub seed: u64,
}

impl Default for DecomposeOptions {
    fn default() -> Self {
        Self {
            tolerance: 1e-9,
            max_iterations: 10_000,
            restarts: 16,
            seed: 0,
        }
    }
}

impl DecomposeOptions {
    pub fn validate(&self) -> Result<()> {
        if self.tolerance.is_nan() || self.tolerance <= 0.0 {
            return Err(Error::InvalidOptions("tolerance must be positive"));
        }
        if self.restarts < 1 {
            return Err(Error::InvalidOptions("restarts must be at least 1"));
        }
        Ok(())
    }
}

fn seeded_certificate(x: &XState, parts: &[Bipartition], tol: f64) -> Option<Decomposition> {
    gallery::paper_decompositions()
        .into_iter()
        .filter(|(whole, _)| whole.as_hermitian() == x.as_hermitian())
        .map(|(_, d)| d)
        .find(|d| d.labels().iter().all(|p| parts.contains(p)) && d.verify(x, tol))
}

/// Searches for X-shaped components, one per bipartition in `parts`,
/// summing to `x`. Never returns Out.
pub fn decompose(x: &XState, parts: &[Bipartition], opts: &DecomposeOptions) -> Result<Verdict> {
    opts.validate()?;
    let mut parts = parts.to_vec();
    parts.sort();
    parts.dedup();
    if parts.is_empty() {
        return Err(Error::EmptyParts);
    }
    if let Some(d) = seeded_certificate(x, &parts, opts.tolerance) {
        return Ok(Verdict::In(d));
    }

    let g = x.geometric_means();
    let m = x.moduli();
    let edges: Vec<(usize, usize)> = parts
        .iter()
        .flat_map(|p| p.pairing().map(|[i, j]| (i, j)))
        .collect();
    let bounds: Vec<(f64, f64)> = (0..4).map(|i| (m[i], g[i])).collect();
    let eps = 1e-15 * (1.0 + x.trace());
    let slack = boundary_slack(x).max(eps);

    let (weights, paths) = match degree_interval_weights(&bounds, &edges, eps, slack, opts.max_iterations) {
        FlowOutcome::Feasible { weights, paths } => (weights, paths),
        FlowOutcome::Infeasible { shortfall, paths } => {
            return Ok(Verdict::Unknown(Diagnostics {
                reason: "no X-shaped decomposition over these bipartitions".into(),
                augmenting_paths: paths,
                shortfall: Some(shortfall),
            }))
        }
        FlowOutcome::BudgetExhausted { paths } => {
            return Ok(Verdict::Unknown(Diagnostics {
                reason: "iteration budget exhausted".into(),
                augmenting_paths: paths,
                shortfall: None,
            }))
        }
    };

    let decomposition = assemble(x, &parts, &weights, opts.tolerance);
    match decomposition {
        Some(d) if d.verify(x, opts.tolerance) => Ok(Verdict::In(d)),
        _ => Ok(Verdict::Unknown(Diagnostics {
            reason: "flow solution failed certificate verification".into(),
            augmenting_paths: paths,
            shortfall: None,
        })),
    }
}

/// Turns per-edge weights (two edges per part, in `parts` order) into components.
fn assemble(x: &XState, parts: &[Bipartition], weights: &[f64], tol: f64) -> Option<Decomposition> {
    let n = parts.len();
    let g = x.geometric_means();
    let m = x.moduli();
    // weight[p][i]: weight of the edge at block i owned by part p
    let mut weight = vec![[0.0f64; 4]; n];
    for (p, part) in parts.iter().enumerate() {
        for (e, [i, j]) in part.pairing().into_iter().enumerate() {
            let w = weights[2 * p + e];
            weight[p][i] = w;
            weight[p][j] = w;
        }
    }

    let mut share = vec![[0.0f64; 4]; n];
    let mut modulus = vec![[0.0f64; 4]; n];
    for i in 0..4 {
        if g[i] > 0.0 {
            let used: f64 = (0..n).map(|p| weight[p][i] / g[i]).sum();
            for p in 0..n {
                share[p][i] = if used > 1.0 {
                    weight[p][i] / g[i] / used
                } else {
                    weight[p][i] / g[i] + (1.0 - used) / n as f64
                };
            }
        } else {
            for s in share.iter_mut() {
                s[i] = 1.0 / n as f64;
            }
        }
        let degree: f64 = (0..n).map(|p| weight[p][i]).sum();
        if degree > 0.0 {
            for p in 0..n {
                modulus[p][i] = weight[p][i] * (m[i] / degree);
            }
        }
    }

    let unit = x.z.map(|z| if z.norm() > 0.0 { z / z.norm() } else { Complex64::new(0.0, 0.0) });
    let mut components = Vec::with_capacity(n);
    for (p, &part) in parts.iter().enumerate() {
        let c = XHermitian::new(
            std::array::from_fn(|i| share[p][i] * x.a[i]),
            std::array::from_fn(|i| share[p][i] * x.b[i]),
            std::array::from_fn(|i| unit[i] * modulus[p][i]),
        );
        if c.trace() == 0.0 {
            continue;
        }
        components.push(Component {
            bipartition: part,
            xstate: XState::new(c, tol).ok()?,
        });
    }
    Some(Decomposition { components })
}

fn out_certificate(x: &XState, q: HullQuestion) -> Option<OutCertificate> {
    let (lhs, rhs) = lemma_sides(x, q)?;
    let excluded = q.excluded()?;
    let scope = WitnessScope::Hull(q.parts()[0], q.parts()[1]);
    let base = default_epsilon(x);
    let witness = [1.0, 1e-4, 1e-8, 1e-12].into_iter().find_map(|f| {
        let (w1, w2) = hull_witnesses(x, excluded, base * f).ok()?;
        [w1, w2]
            .into_iter()
            .map(|w| WitnessEvidence {
                pairing: w.pairing(x),
                witness: w,
            })
            .filter(|ev| ev.pairing < 0.0 && ev.witness.is_valid_for(scope))
            .min_by(|p, q| p.pairing.total_cmp(&q.pairing))
    });
    Some(OutCertificate {
        condition: q.condition()?,
        lhs,
        rhs,
        witness,
    })
}

/// Decides membership of `x` in the hull `q`.
///
/// In if a single bipartition of `q` already separates `x`, Out if the
/// necessary condition fails, otherwise whatever [`decompose`] finds.
pub fn membership(x: &XState, q: HullQuestion, opts: &DecomposeOptions) -> Result<Verdict> {
    opts.validate()?;
    if let Some(&p) = q.parts().iter().find(|&&p| is_separable(x, p)) {
        return Ok(Verdict::In(Decomposition {
            components: vec![Component {
                bipartition: p,
                xstate: *x,
            }],
        }));
    }
    if !mixture_necessary(x, q) {
        if let Some(cert) = out_certificate(x, q) {
            if cert.verify(x, q) {
                return Ok(Verdict::Out(cert));
            }
        }
    }
    decompose(x, q.parts(), opts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::Sampler;

    fn opts() -> DecomposeOptions {
        DecomposeOptions::default()
    }

    #[test]
    fn necessary_condition_examples() {
        let rho1 = gallery::rho1();
        assert_eq!(lemma_sides(&rho1, HullQuestion::BC), Some((2.0, 2.0)));
        assert!(mixture_necessary(&rho1, HullQuestion::BC));
        let rho3 = gallery::rho3();
        assert_eq!(lemma_sides(&rho3, HullQuestion::BC), Some((1.0, 3.0)));
        assert!(!mixture_necessary(&rho3, HullQuestion::BC));
        let rho2 = gallery::rho2();
        for q in HullQuestion::PAIRWISE {
            assert_eq!(lemma_sides(&rho2, q), Some((2.0, 2.0)));
            assert!(mixture_necessary(&rho2, q));
        }
        for q in HullQuestion::ALL {
            assert!(mixture_necessary(&XHermitian::identity(), q));
        }
        assert_eq!(lemma_sides(&rho3, HullQuestion::ABC), None);
    }

    #[test]
    fn decompose_rho1() {
        let v = decompose(&gallery::rho1(), &[Bipartition::BCA, Bipartition::CAB], &opts()).unwrap();
        assert_eq!(v.tag(), VerdictTag::In);
        assert!(v.verify(&gallery::rho1(), HullQuestion::BC, 1e-9));
    }

    #[test]
    fn paper_certificates_pass_verifier() {
        for (whole, d) in gallery::paper_decompositions() {
            assert!(d.verify(&whole, 0.0));
            assert_eq!(d.sum(), *whole.as_hermitian());
        }
    }

    #[test]
    fn flow_search_reproduces_boundary_decompositions_without_seeding() {
        // scaled copies are not in the gallery, so the flow search runs
        for (whole, d) in gallery::paper_decompositions() {
            let scaled = whole.scale(0.3);
            let v = decompose(&scaled, &d.labels(), &opts()).unwrap();
            match &v {
                Verdict::In(found) => assert!(found.verify(&scaled, 1e-9)),
                other => panic!("{other:?}"),
            }
        }
    }

    #[test]
    fn ghz_is_not_decomposed() {
        for scale in [1.0, 0.37, 12.0] {
            let v = decompose(&XState::ghz().scale(scale), &Bipartition::ALL, &opts()).unwrap();
            assert_eq!(v.tag(), VerdictTag::Unknown);
        }
    }

    #[test]
    fn membership_examples() {
        let v = membership(&gallery::rho1(), HullQuestion::BC, &opts()).unwrap();
        assert_eq!(v.tag(), VerdictTag::In);

        let rho3 = gallery::rho3();
        match membership(&rho3, HullQuestion::BC, &opts()).unwrap() {
            Verdict::Out(c) => {
                assert_eq!(c.condition, "(i)");
                assert_eq!(c.margin(), 2.0);
                let ev = c.witness.as_ref().expect("witness");
                assert!(ev.pairing < 0.0);
                assert!(c.verify(&rho3, HullQuestion::BC));
            }
            other => panic!("{other:?}"),
        }

        let rho2 = gallery::rho2();
        match membership(&rho2, HullQuestion::CA, &opts()).unwrap() {
            Verdict::In(d) => {
                let by_name = gallery::by_name("rho2C0").unwrap().state;
                let other = gallery::by_name("rho2A1").unwrap().state;
                assert_eq!(d.components.len(), 2);
                assert_eq!(d.components[0].xstate, by_name);
                assert_eq!(d.components[1].xstate, other);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn single_bipartition_shortcut() {
        let v = membership(&gallery::rho1(), HullQuestion::CA, &opts()).unwrap();
        match v {
            Verdict::In(d) => {
                assert_eq!(d.components.len(), 1);
                assert_eq!(d.components[0].bipartition, Bipartition::ABC);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn random_mixtures_decompose() {
        let mut sampler = Sampler::new(77, 1.0);
        for _ in 0..300 {
            let x = sampler.separable(Bipartition::BCA, 0.0) + sampler.separable(Bipartition::CAB, 0.0);
            assert!(mixture_necessary(&x, HullQuestion::BC));
            let v = membership(&x, HullQuestion::BC, &opts()).unwrap();
            assert_eq!(v.tag(), VerdictTag::In);
            assert!(v.verify(&x, HullQuestion::BC, 1e-9));
        }
    }

    #[test]
    fn rejects_bad_options() {
        let bad = DecomposeOptions {
            tolerance: 0.0,
            ..opts()
        };
        assert!(decompose(&gallery::rho1(), &Bipartition::ALL, &bad).is_err());
        assert_eq!(
            decompose(&gallery::rho1(), &[], &opts()),
            Err(Error::EmptyParts)
        );
    }
}
