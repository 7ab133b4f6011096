use num_complex::Complex64;
use proptest::prelude::*;
use xsep::gallery;
use xsep::hull::{membership, mixture_necessary, DecomposeOptions, HullQuestion, VerdictTag};
use xsep::random::Sampler;
use xsep::{
    classify, is_ppt, is_separable, membership_vector, separability_profile, Bipartition, Subsystem, XHermitian,
    XState,
};

const FLIPS: [(Subsystem, Subsystem); 3] = [
    (Subsystem::A, Subsystem::B),
    (Subsystem::B, Subsystem::C),
    (Subsystem::A, Subsystem::C),
];

fn xhermitian() -> impl Strategy<Value = XHermitian> {
    let real = -5.0f64..5.0;
    (
        prop::array::uniform4(real.clone()),
        prop::array::uniform4(real.clone()),
        prop::array::uniform4((real.clone(), real)),
    )
        .prop_map(|(a, b, z)| XHermitian::new(a, b, z.map(|(re, im)| Complex64::new(re, im))))
}

proptest! {
    #[test]
    fn embed_and_x_part_are_inverse(x in xhermitian()) {
        prop_assert_eq!(XHermitian::x_part(&x.embed()), x);
    }

    #[test]
    fn partial_transpose_keeps_x_shape(x in xhermitian()) {
        for s in Subsystem::ALL {
            let pt = x.embed().partial_transpose(s);
            for r in 0..8 {
                for c in 0..8 {
                    if c != r && c != 7 - r {
                        prop_assert!(pt[(r, c)].norm() <= 1e-15);
                    }
                }
            }
            prop_assert_eq!(XHermitian::x_part(&pt).embed(), pt);
        }
    }

    #[test]
    fn partial_transpose_on_a_swaps_first_and_last_block(x in xhermitian()) {
        let pt = XHermitian::x_part(&x.embed().partial_transpose(Subsystem::A));
        prop_assert_eq!(pt.a, x.a);
        prop_assert_eq!(pt.b, x.b);
        prop_assert_eq!(pt.z, [x.z[3].conj(), x.z[2].conj(), x.z[1].conj(), x.z[0].conj()]);
    }

    #[test]
    fn flip_is_an_involution(x in xhermitian()) {
        for (s, t) in FLIPS {
            prop_assert_eq!(x.flip(s, t).unwrap().flip(s, t).unwrap(), x);
        }
    }
}

#[test]
fn validate_agrees_with_eigenvalues() {
    let mut sampler = Sampler::new(101, 1.0);
    let mut disagreements = 0;
    let mut invalid = 0;
    for n in 0..10_000 {
        let x: XHermitian = if n % 2 == 0 { *sampler.valid().as_hermitian() } else { sampler.adversarial() };
        let valid = x.validate(0.0);
        invalid += !valid as usize;
        if valid != x.embed().is_psd(1e-10) {
            disagreements += 1;
        }
    }
    assert_eq!(disagreements, 0);
    assert!(invalid > 1000, "adversarial generator too tame: {invalid}");
}

#[test]
fn generator_straddles_the_a_bc_criterion() {
    let violating = (0..10_000)
        .filter(|&seed| !is_separable(&xsep::random_xstate(seed, 1.0), Bipartition::ABC))
        .count();
    assert!(violating > 0 && violating < 10_000, "{violating}");
}

#[test]
fn flipped_rho1_is_the_b_ca_analogue() {
    let f = gallery::rho1().flip(Subsystem::A, Subsystem::B).unwrap();
    assert_eq!(separability_profile(&f), [false, true, false]);
    let g = gallery::rho1().flip(Subsystem::A, Subsystem::C).unwrap();
    assert_eq!(separability_profile(&g), [false, false, true]);
}

#[test]
fn separable_generator_matches_ppt_oracle() {
    let mut sampler = Sampler::new(55, 2.0);
    for _ in 0..2000 {
        for p in Bipartition::ALL {
            let x = sampler.separable(p, 0.0);
            assert!(is_separable(&x, p));
            assert!(is_ppt(&x, p, 1e-10));
        }
    }
}

#[test]
fn separability_implies_mixture_condition() {
    let mut sampler = Sampler::new(66, 1.0);
    for _ in 0..3000 {
        let x = sampler.valid();
        for q in HullQuestion::PAIRWISE {
            if q.parts().iter().any(|&p| is_separable(&x, p)) {
                assert!(mixture_necessary(&x, q));
            }
        }
    }
}

#[test]
fn every_verdict_reverifies_and_vectors_are_consistent() {
    let opts = DecomposeOptions::default();
    let mut sampler = Sampler::new(202, 1.0);
    let mut tags = std::collections::HashMap::new();
    for n in 0..10_000 {
        // mix in structured states so that every verdict kind shows up
        let x = match n % 3 {
            0 => sampler.valid(),
            1 => sampler.separable(Bipartition::ALL[n % 3], 0.0) + sampler.separable(Bipartition::ALL[(n / 3) % 3], 0.0),
            _ => {
                let ghz = XState::ghz().scale(1.0 + (n as f64) * 1e-4);
                ghz + sampler.valid().scale(0.05)
            }
        };
        let m = membership_vector(&x, &opts).unwrap();
        assert!(m.vector.is_consistent(), "{}", m.vector);
        for q in HullQuestion::ALL {
            let v = m.verdict(q);
            *tags.entry((q, v.tag())).or_insert(0) += 1;
            assert!(v.verify(&x, q, opts.tolerance), "{q} {v:?}");
        }
    }
    for q in HullQuestion::PAIRWISE {
        assert!(tags.contains_key(&(q, VerdictTag::In)));
        assert!(tags.contains_key(&(q, VerdictTag::Out)));
    }
    assert!(tags.contains_key(&(HullQuestion::ABC, VerdictTag::Unknown)));
}

#[test]
fn pairwise_condition_with_margin_always_decomposes() {
    // the flow search is complete for X-shaped components, so a pairwise hull
    // is never left Unknown when the necessary condition holds
    let opts = DecomposeOptions::default();
    let mut sampler = Sampler::new(303, 1.0);
    let mut checked = 0;
    for _ in 0..5000 {
        let x = sampler.valid();
        for q in HullQuestion::PAIRWISE {
            if mixture_necessary(&x, q) {
                checked += 1;
                assert_eq!(membership(&x, q, &opts).unwrap().tag(), VerdictTag::In);
            }
        }
    }
    assert!(checked > 1000);
}

#[test]
fn classification_is_permutation_equivariant() {
    let opts = DecomposeOptions::default();
    let mut states: Vec<XState> = gallery::gallery().into_iter().map(|e| e.state).collect();
    let mut sampler = Sampler::new(404, 1.0);
    states.extend((0..100).map(|_| sampler.valid()));
    for x in states {
        let label = classify(&x, &opts).unwrap();
        for (s, t) in FLIPS {
            let flipped = classify(&x.flip(s, t).unwrap(), &opts).unwrap();
            assert_eq!(flipped, label.swapped(s, t), "{x:?}");
        }
    }
}

#[test]
fn hull_verdicts_follow_flips_on_gallery() {
    let opts = DecomposeOptions::default();
    for e in gallery::gallery() {
        for (s, t) in FLIPS {
            let f = e.state.flip(s, t).unwrap();
            for q in HullQuestion::ALL {
                let direct = membership(&f, q.swapped(s, t), &opts).unwrap().tag();
                let original = membership(&e.state, q, &opts).unwrap().tag();
                assert_eq!(direct, original, "{} {q}", e.name);
            }
        }
    }
}

#[test]
fn gallery_closure() {
    let opts = DecomposeOptions::default();
    for e in gallery::gallery() {
        let m = membership_vector(&e.state, &opts).unwrap();
        assert_eq!(m.vector, e.expected, "{}", e.name);
        assert_eq!(m.label(), e.label, "{}", e.name);
        assert!(!m.vector.hulls.contains(&VerdictTag::Unknown));
        assert_ne!(m.vector.hull_abc, VerdictTag::Unknown);
    }
}

#[test]
fn scaling_preserves_labels() {
    let opts = DecomposeOptions::default();
    for e in gallery::gallery() {
        for c in [0.125, 0.3, 7.0] {
            assert_eq!(classify(&e.state.scale(c), &opts).unwrap(), e.label, "{} x{c}", e.name);
        }
    }
}
