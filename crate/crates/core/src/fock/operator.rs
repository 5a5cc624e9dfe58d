//! Dense complex operators on a truncated number basis.

use std::ops::{Index, IndexMut};

use num_complex::Complex64;

use super::ladder::LadderGenerator;
use crate::error::{invalid, Error, Result};
use crate::parallel::Execution;

/// Max-norm of the last Taylor term at which [`OperatorMatrix::expm`] stops.
pub const EXPM_TOL: f64 = 1e-14;

/// Row-major `dim × dim` complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorMatrix {
    dim: usize,
    entries: Vec<Complex64>,
}

impl Index<(usize, usize)> for OperatorMatrix {
    type Output = Complex64;

    fn index(&self, (row, col): (usize, usize)) -> &Complex64 {
        &self.entries[row * self.dim + col]
    }
}

impl IndexMut<(usize, usize)> for OperatorMatrix {
    fn index_mut(&mut self, (row, col): (usize, usize)) -> &mut Complex64 {
        &mut self.entries[row * self.dim + col]
    }
}

impl OperatorMatrix {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            entries: vec![Complex64::new(0.0, 0.0); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    /// `a` with `a[n−1, n] = √n`.
    pub fn annihilation(dim: usize) -> Self {
        LadderGenerator::zero(dim)
            .add_ladder_power(1, Complex64::new(1.0, 0.0))
            .to_dense()
    }

    /// `n̂ = a†a`, diagonal `0..dim`.
    pub fn number(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = Complex64::new(i as f64, 0.0);
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn adjoint(&self) -> Self {
        let mut m = Self::zeros(self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                m[(j, i)] = self[(i, j)].conj();
            }
        }
        m
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self {
            dim: self.dim,
            entries: self.entries.iter().map(|x| x * s).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        Self {
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        let n = self.dim;
        let rows = Execution::default().map_indexed(n, |i| {
            let mut row = vec![Complex64::new(0.0, 0.0); n];
            for k in 0..n {
                let a = self.entries[i * n + k];
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                let b = &other.entries[k * n..(k + 1) * n];
                for (r, x) in row.iter_mut().zip(b) {
                    *r += a * x;
                }
            }
            row
        });
        Self {
            dim: n,
            entries: rows.concat(),
        }
    }

    /// Kronecker product `self ⊗ other`, with the first factor as the slow index.
    pub fn kron(&self, other: &Self) -> Self {
        let (n, m) = (self.dim, other.dim);
        let mut out = Self::zeros(n * m);
        for i in 0..n {
            for j in 0..n {
                let a = self[(i, j)];
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for k in 0..m {
                    for l in 0..m {
                        out[(i * m + k, j * m + l)] = a * other[(k, l)];
                    }
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(v.len(), self.dim, "dimension mismatch");
        self.entries
            .chunks(self.dim)
            .map(|row| row.iter().zip(v).map(|(a, x)| a * x).sum())
            .collect()
    }

    pub fn max_abs(&self) -> f64 {
        self.entries.iter().fold(0.0, |m, x| m.max(x.norm()))
    }

    pub fn one_norm(&self) -> f64 {
        (0..self.dim)
            .map(|j| (0..self.dim).map(|i| self[(i, j)].norm()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    /// Matrix exponential by scaling and squaring with a truncated Taylor series.
    ///
    /// The matrix is scaled by `2^-s` until its 1-norm is at most 1/2, the series is summed
    /// until the last term's max-norm drops below [`EXPM_TOL`], and the result is squared `s`
    /// times.
    pub fn expm(&self) -> Self {
        let norm = self.one_norm();
        let squarings = if norm > 0.5 {
            (norm / 0.5).log2().ceil() as i32
        } else {
            0
        };
        let scaled = self.scale(Complex64::new(0.5f64.powi(squarings), 0.0));
        let mut sum = Self::identity(self.dim);
        let mut term = Self::identity(self.dim);
        for k in 1..=60 {
            term = term
                .matmul(&scaled)
                .scale(Complex64::new(1.0 / k as f64, 0.0));
            sum = sum.add(&term);
            if term.max_abs() < EXPM_TOL {
                break;
            }
        }
        for _ in 0..squarings {
            sum = sum.matmul(&sum);
        }
        sum
    }

    /// `max |(U†U − I)_{ij}|` over the leading `block × block` corner.
    pub fn unitarity_defect(&self, block: usize) -> f64 {
        let gram = self.adjoint().matmul(self);
        let mut worst: f64 = 0.0;
        for i in 0..block.min(self.dim) {
            for j in 0..block.min(self.dim) {
                let want = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((gram[(i, j)] - want).norm());
            }
        }
        worst
    }
}

pub(crate) fn check_dim(dim: usize) -> Result<()> {
    if dim < 2 {
        return Err(invalid("dim", format!("must be >= 2, got {dim}")));
    }
    Ok(())
}

pub(crate) fn displacement_guard(alpha: Complex64, dim: usize) -> Result<()> {
    guard("displacement |alpha|^2 <= dim/4", alpha.norm_sqr(), dim)
}

pub(crate) fn squeeze_guard(r: f64, dim: usize) -> Result<()> {
    guard("squeeze sinh^2(r) <= dim/4", r.sinh().powi(2), dim)
}

fn guard(name: &'static str, value: f64, dim: usize) -> Result<()> {
    let limit = dim as f64 / 4.0;
    if value > limit {
        return Err(Error::TruncationGuard {
            guard: name,
            value,
            limit,
            dim,
        });
    }
    Ok(())
}

/// Dense `D(α) = exp(α a† − α* a)` on `dim` levels.
pub fn build_displacement(alpha: Complex64, dim: usize) -> Result<OperatorMatrix> {
    check_dim(dim)?;
    displacement_guard(alpha, dim)?;
    Ok(LadderGenerator::displacement(alpha, dim).to_dense().expm())
}

/// Dense `S(ξ) = exp(½(ξ* a² − ξ a†²))` on `dim` levels.
pub fn build_squeeze(xi: Complex64, dim: usize) -> Result<OperatorMatrix> {
    check_dim(dim)?;
    squeeze_guard(xi.norm(), dim)?;
    Ok(LadderGenerator::squeeze(xi, dim).to_dense().expm())
}
