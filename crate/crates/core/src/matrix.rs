//! Dense 8×8 complex Hermitian matrices on `C^2 ⊗ C^2 ⊗ C^2`.
//!
//! Basis index `4i + 2j + k` for the bits `(i, j, k)` of systems A, B, C.
//! Everything here serves as an independent numerical oracle for the
//! closed-form criteria in the rest of the crate.

use std::fmt;
use std::ops::{Add, Index, Mul, Neg, Sub};
use std::str::FromStr;

use nalgebra::SMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const DIM: usize = 8;

/// Hermitian-ness after symmetrization, checked by tests.
pub const HERMITIAN_TOL: f64 = 1e-12;
/// Inputs whose asymmetry exceeds this are rejected instead of averaged.
pub const MAX_ASYMMETRY: f64 = 1e-9;
/// Imaginary part allowed in a trace pairing of two Hermitian matrices.
pub const PAIRING_IMAG_TOL: f64 = 1e-12;

/// One of the three qubits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Subsystem {
    A,
    B,
    C,
}

impl Subsystem {
    pub const ALL: [Subsystem; 3] = [Subsystem::A, Subsystem::B, Subsystem::C];

    /// Bit of the basis index carrying this subsystem.
    pub fn bit(self) -> usize {
        match self {
            Subsystem::A => 4,
            Subsystem::B => 2,
            Subsystem::C => 1,
        }
    }

    pub fn index(self) -> usize {
        match self {
            Subsystem::A => 0,
            Subsystem::B => 1,
            Subsystem::C => 2,
        }
    }
}

impl fmt::Display for Subsystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Subsystem::A => "A",
            Subsystem::B => "B",
            Subsystem::C => "C",
        };
        f.write_str(s)
    }
}

impl FromStr for Subsystem {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "A" | "a" => Ok(Subsystem::A),
            "B" | "b" => Ok(Subsystem::B),
            "C" | "c" => Ok(Subsystem::C),
            other => Err(format!("unknown subsystem {other:?}")),
        }
    }
}

/// Swaps the bits `x` and `y` of a basis index.
pub(crate) fn swap_bits(index: usize, x: usize, y: usize) -> usize {
    let bx = index & x != 0;
    let by = index & y != 0;
    if bx == by {
        index
    } else {
        index ^ x ^ y
    }
}

#[derive(Clone, Copy, PartialEq)]
pub struct HermitianMatrix8 {
    entries: [[Complex64; DIM]; DIM],
}

impl fmt::Debug for HermitianMatrix8 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "HermitianMatrix8 [")?;
        for row in &self.entries {
            write!(f, " ")?;
            for z in row {
                write!(f, " {:>8.4}{:+.4}i", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl HermitianMatrix8 {
    pub fn zeros() -> Self {
        Self {
            entries: [[Complex64::new(0.0, 0.0); DIM]; DIM],
        }
    }

    pub fn identity() -> Self {
        let mut m = Self::zeros();
        for r in 0..DIM {
            m.entries[r][r] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_real_diagonal(diag: [f64; DIM]) -> Self {
        let mut m = Self::zeros();
        for (r, d) in diag.into_iter().enumerate() {
            m.entries[r][r] = Complex64::new(d, 0.0);
        }
        m
    }

    /// Builds a matrix from raw entries, replacing them by `(M + M†)/2`.
    ///
    /// Fails when the input is further than [`MAX_ASYMMETRY`] from Hermitian.
    pub fn new(entries: [[Complex64; DIM]; DIM]) -> Result<Self> {
        let mut asymmetry: f64 = 0.0;
        for r in 0..DIM {
            for c in r..DIM {
                asymmetry = asymmetry.max((entries[r][c] - entries[c][r].conj()).norm());
            }
        }
        if asymmetry > MAX_ASYMMETRY {
            return Err(Error::NotHermitian {
                asymmetry,
                limit: MAX_ASYMMETRY,
            });
        }
        Ok(Self::symmetrized(entries))
    }

    /// Entries are assumed Hermitian up to roundoff; symmetrizes without checking.
    pub(crate) fn symmetrized(entries: [[Complex64; DIM]; DIM]) -> Self {
        let mut out = [[Complex64::new(0.0, 0.0); DIM]; DIM];
        for r in 0..DIM {
            out[r][r] = Complex64::new(entries[r][r].re, 0.0);
            for c in (r + 1)..DIM {
                let v = (entries[r][c] + entries[c][r].conj()) * 0.5;
                out[r][c] = v;
                out[c][r] = v.conj();
            }
        }
        Self { entries: out }
    }

    pub fn entry(&self, row: usize, col: usize) -> Complex64 {
        self.entries[row][col]
    }

    pub fn entries(&self) -> &[[Complex64; DIM]; DIM] {
        &self.entries
    }

    pub fn trace(&self) -> f64 {
        (0..DIM).map(|r| self.entries[r][r].re).sum()
    }

    pub fn max_abs_entry(&self) -> f64 {
        self.entries
            .iter()
            .flatten()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }

    pub fn scale(&self, factor: f64) -> Self {
        let mut out = *self;
        out.entries.iter_mut().flatten().for_each(|z| *z *= factor);
        out
    }

    /// Largest `|M(r,c) - N(r,c)|`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.entries
            .iter()
            .flatten()
            .zip(other.entries.iter().flatten())
            .map(|(x, y)| (x - y).norm())
            .fold(0.0, f64::max)
    }

    pub fn transpose(&self) -> Self {
        let mut out = *self;
        for r in 0..DIM {
            for c in 0..DIM {
                out.entries[r][c] = self.entries[c][r];
            }
        }
        out
    }

    /// Conjugation by the permutation swapping the index bits of `s` and `t`.
    pub fn permute_subsystems(&self, s: Subsystem, t: Subsystem) -> Self {
        let (x, y) = (s.bit(), t.bit());
        let mut out = Self::zeros();
        for r in 0..DIM {
            for c in 0..DIM {
                out.entries[r][c] = self.entries[swap_bits(r, x, y)][swap_bits(c, x, y)];
            }
        }
        out
    }

    /// Transposes the index of subsystem `s` only.
    pub fn partial_transpose(&self, s: Subsystem) -> Self {
        let bit = s.bit();
        let mut out = Self::zeros();
        for r in 0..DIM {
            for c in 0..DIM {
                // swap the s-bits of the row and column indices
                let (rr, cc) = ((r & !bit) | (c & bit), (c & !bit) | (r & bit));
                out.entries[r][c] = self.entries[rr][cc];
            }
        }
        out
    }

    /// `Tr(Mᵗ N)`, computed as the entrywise sum `Σ M(r,c) N(r,c)`.
    pub fn pairing(&self, other: &Self) -> f64 {
        let sum: Complex64 = self
            .entries
            .iter()
            .flatten()
            .zip(other.entries.iter().flatten())
            .map(|(m, n)| m * n)
            .sum();
        debug_assert!(
            sum.im.abs() <= PAIRING_IMAG_TOL * (1.0 + sum.re.abs()),
            "pairing of Hermitian matrices has imaginary part {}",
            sum.im
        );
        sum.re
    }

    /// `Tr(Mᵗ N)` through an explicit product; slower twin of [`Self::pairing`].
    pub fn pairing_by_product(&self, other: &Self) -> Complex64 {
        let mt = self.transpose();
        (0..DIM)
            .map(|r| (0..DIM).map(|k| mt.entries[r][k] * other.entries[k][r]).sum::<Complex64>())
            .sum()
    }

    fn to_nalgebra(self) -> SMatrix<Complex64, DIM, DIM> {
        SMatrix::from_fn(|r, c| self.entries[r][c])
    }

    /// Eigenvalues in ascending order.
    pub fn eigenvalues(&self) -> [f64; DIM] {
        let scale = self.max_abs_entry();
        if scale == 0.0 {
            return [0.0; DIM];
        }
        // work on the unit-scale matrix so the convergence threshold is relative
        let m = self.scale(1.0 / scale).to_nalgebra();
        let eig = m.symmetric_eigenvalues();
        let mut out = [0.0; DIM];
        for (o, e) in out.iter_mut().zip(eig.iter()) {
            *o = e * scale;
        }
        out.sort_by(f64::total_cmp);
        out
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues()[0]
    }

    /// `min_eigenvalue(M) >= -tol`.
    pub fn is_psd(&self, tol: f64) -> bool {
        self.min_eigenvalue() >= -tol
    }
}

impl Index<(usize, usize)> for HermitianMatrix8 {
    type Output = Complex64;

    fn index(&self, (r, c): (usize, usize)) -> &Complex64 {
        &self.entries[r][c]
    }
}

impl Add for HermitianMatrix8 {
    type Output = Self;

    fn add(mut self, rhs: Self) -> Self {
        for (x, y) in self.entries.iter_mut().flatten().zip(rhs.entries.iter().flatten()) {
            *x += y;
        }
        self
    }
}

impl Sub for HermitianMatrix8 {
    type Output = Self;

    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Neg for HermitianMatrix8 {
    type Output = Self;

    fn neg(self) -> Self {
        self.scale(-1.0)
    }
}

impl Mul<f64> for HermitianMatrix8 {
    type Output = Self;

    fn mul(self, rhs: f64) -> Self {
        self.scale(rhs)
    }
}
