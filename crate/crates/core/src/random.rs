//! Seeded generators of X-states and X-shaped witnesses for property tests.

use std::f64::consts::TAU;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::separability::Bipartition;
use crate::witness::XWitness;
use crate::xstate::{XHermitian, XState};

pub struct Sampler {
    rng: ChaCha8Rng,
    scale: f64,
}

impl Sampler {
    pub fn new(seed: u64, scale: f64) -> Self {
        assert!(scale > 0.0, "scale must be positive");
        Self {
            rng: ChaCha8Rng::seed_from_u64(seed),
            scale,
        }
    }

    fn unit(&mut self) -> f64 {
        self.rng.random::<f64>()
    }

    fn phase(&mut self, modulus: f64) -> Complex64 {
        Complex64::from_polar(modulus, self.unit() * TAU)
    }

    fn diagonals(&mut self, floor: f64) -> ([f64; 4], [f64; 4]) {
        let lo = floor * self.scale;
        let mut draw = || lo + (self.scale - lo) * self.rng.random::<f64>();
        let a = std::array::from_fn(|_| draw());
        let b = std::array::from_fn(|_| draw());
        (a, b)
    }

    /// `a, b ~ U[0, scale]`, `|z_i| ~ U[0, √(a_i b_i)]`, uniform phase.
    pub fn valid(&mut self) -> XState {
        let (a, b) = self.diagonals(0.0);
        self.with_caps(a, b)
    }

    /// Diagonals bounded away from zero, `a, b ~ U[scale/100, scale]`.
    pub fn strictly_positive(&mut self) -> XState {
        let (a, b) = self.diagonals(0.01);
        self.with_caps(a, b)
    }

    fn with_caps(&mut self, a: [f64; 4], b: [f64; 4]) -> XState {
        let mut z = [Complex64::new(0.0, 0.0); 4];
        for i in 0..4 {
            let cap = (a[i] * b[i]).sqrt();
            let r = self.unit() * cap;
            z[i] = self.phase(r);
            // keep |z|^2 <= ab under rounding
            if z[i].norm_sqr() > a[i] * b[i] {
                z[i] = Complex64::new(0.0, 0.0);
            }
        }
        XState::new_unchecked(XHermitian::new(a, b, z))
    }

    /// `|z_i| ~ U[0, scale]`; often not positive.
    pub fn adversarial(&mut self) -> XHermitian {
        let (a, b) = self.diagonals(0.0);
        let z = std::array::from_fn(|_| {
            let r = self.unit() * self.scale;
            self.phase(r)
        });
        XHermitian::new(a, b, z)
    }

    /// Separable across `p`, with moduli at most `(1 - margin)` of their caps.
    pub fn separable(&mut self, p: Bipartition, margin: f64) -> XState {
        let (a, b) = self.diagonals(0.0);
        let g: [f64; 4] = std::array::from_fn(|i| (a[i] * b[i]).sqrt());
        let mut z = [Complex64::new(0.0, 0.0); 4];
        for [i, j] in p.pairing() {
            let cap = g[i].min(g[j]) * (1.0 - margin);
            for k in [i, j] {
                let r = self.unit() * cap;
                z[k] = self.phase(r);
                if z[k].norm() > cap {
                    z[k] = Complex64::new(0.0, 0.0);
                }
            }
        }
        XState::new_unchecked(XHermitian::new(a, b, z))
    }

    /// Block-positive for `p`: each line of the criterion holds.
    pub fn block_positive_witness(&mut self, p: Bipartition) -> XWitness {
        let (s, t) = self.diagonals(0.0);
        let mut u = [Complex64::new(0.0, 0.0); 4];
        for [i, j] in p.pairing() {
            let budget = (s[i] * t[i]).sqrt() + (s[j] * t[j]).sqrt();
            let total = self.unit() * budget;
            let share = self.unit();
            u[i] = self.phase(total * share);
            u[j] = self.phase(total * (1.0 - share));
        }
        XWitness::new(XHermitian::new(s, t, u)).expect("nonnegative diagonals")
    }

    /// Arbitrary `X(s, t, u)` with nonnegative `s, t`.
    pub fn witness(&mut self) -> XWitness {
        XWitness::new(self.adversarial()).expect("nonnegative diagonals")
    }
}
