//! Banded generators built from ladder operators, and `exp(G)·v` without forming `exp(G)`.

use num_complex::Complex64;

use super::operator::OperatorMatrix;

/// Relative size of the last Taylor term at which [`expm_action`] stops.
const ACTION_TOL: f64 = 1e-17;
const MAX_TERMS: usize = 60;

/// Sparse matrix stored as a few diagonals. Band `k` holds entries `(i, i + k)`.
#[derive(Debug, Clone)]
pub struct LadderGenerator {
    dim: usize,
    bands: Vec<(isize, Vec<Complex64>)>,
}

impl LadderGenerator {
    pub fn zero(dim: usize) -> Self {
        Self {
            dim,
            bands: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Adds `coeff · a^k` (`k > 0`) or `coeff · a†^{|k|}` (`k < 0`).
    pub fn add_ladder_power(mut self, k: isize, coeff: Complex64) -> Self {
        if coeff == Complex64::new(0.0, 0.0) || k.unsigned_abs() >= self.dim {
            return self;
        }
        let len = self.dim - k.unsigned_abs();
        // a^k has (i, i+k) = sqrt((i+1)...(i+k)); a†^k has the same value at (i+k, i)
        let band: Vec<Complex64> = (0..len)
            .map(|i| {
                let prod: f64 = (1..=k.unsigned_abs()).map(|m| (i + m) as f64).product();
                coeff * prod.sqrt()
            })
            .collect();
        self.bands.push((k, band));
        self
    }

    /// `α a† − α* a`.
    pub fn displacement(alpha: Complex64, dim: usize) -> Self {
        Self::zero(dim)
            .add_ladder_power(-1, alpha)
            .add_ladder_power(1, -alpha.conj())
    }

    /// `½(ξ* a² − ξ a†²)`.
    pub fn squeeze(xi: Complex64, dim: usize) -> Self {
        Self::zero(dim)
            .add_ladder_power(2, 0.5 * xi.conj())
            .add_ladder_power(-2, -0.5 * xi)
    }

    /// `y = G x`.
    pub fn apply(&self, x: &[Complex64], y: &mut [Complex64]) {
        debug_assert_eq!(x.len(), self.dim);
        y.iter_mut().for_each(|v| *v = Complex64::new(0.0, 0.0));
        for (k, band) in &self.bands {
            let off = k.unsigned_abs();
            if *k > 0 {
                for (i, c) in band.iter().enumerate() {
                    y[i] += c * x[i + off];
                }
            } else {
                for (i, c) in band.iter().enumerate() {
                    y[i + off] += c * x[i];
                }
            }
        }
    }

    /// Maximum absolute column sum.
    pub fn one_norm(&self) -> f64 {
        let mut col = vec![0.0; self.dim];
        for (k, band) in &self.bands {
            let off = k.unsigned_abs();
            for (i, c) in band.iter().enumerate() {
                let j = if *k > 0 { i + off } else { i };
                col[j] += c.norm();
            }
        }
        col.into_iter().fold(0.0, f64::max)
    }

    pub fn to_dense(&self) -> OperatorMatrix {
        let mut m = OperatorMatrix::zeros(self.dim);
        for (k, band) in &self.bands {
            let off = k.unsigned_abs();
            for (i, c) in band.iter().enumerate() {
                let (row, col) = if *k > 0 { (i, i + off) } else { (i + off, i) };
                m[(row, col)] += *c;
            }
        }
        m
    }
}

/// `exp(G)·v` by splitting into steps of norm at most one and summing the Taylor series of
/// each step on the vector.
pub fn expm_action(gen: &LadderGenerator, v: &[Complex64]) -> Vec<Complex64> {
    let norm = gen.one_norm();
    let mut acc = v.to_vec();
    if norm == 0.0 {
        return acc;
    }
    let steps = norm.ceil().max(1.0) as usize;
    let inv_steps = 1.0 / steps as f64;
    let mut term = vec![Complex64::new(0.0, 0.0); v.len()];
    let mut next = term.clone();
    for _ in 0..steps {
        term.copy_from_slice(&acc);
        let mut sum = acc.clone();
        for k in 1..=MAX_TERMS {
            gen.apply(&term, &mut next);
            let scale = inv_steps / k as f64;
            let mut term_max: f64 = 0.0;
            for (t, n) in term.iter_mut().zip(&next) {
                *t = n * scale;
                term_max = term_max.max(t.norm());
            }
            let mut sum_max: f64 = 0.0;
            for (s, t) in sum.iter_mut().zip(&term) {
                *s += t;
                sum_max = sum_max.max(s.norm());
            }
            if term_max <= ACTION_TOL * sum_max {
                break;
            }
        }
        acc = sum;
    }
    acc
}
