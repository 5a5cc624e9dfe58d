//! Pure states on a truncated number basis.

use num_complex::Complex64;

use super::ladder::{expm_action, LadderGenerator};
use super::operator::{check_dim, displacement_guard, squeeze_guard};
use crate::error::{invalid, Error, Result};
use crate::params::DsvParams;

/// Tail mass tolerated by [`dsv_state`].
pub const DEFAULT_TAIL_TOL: f64 = 1e-10;

/// Amplitudes `⟨n|ψ⟩` for `n = 0..dim`.
#[derive(Debug, Clone, PartialEq)]
pub struct FockVector {
    amps: Vec<Complex64>,
    /// Probability weight that fell at or above `dim` before truncation and renormalization.
    tail_mass: f64,
}

impl FockVector {
    pub fn from_amplitudes(amps: Vec<Complex64>) -> Self {
        Self {
            amps,
            tail_mass: 0.0,
        }
    }

    pub fn basis(n: usize, dim: usize) -> Self {
        let mut amps = vec![Complex64::new(0.0, 0.0); dim];
        amps[n] = Complex64::new(1.0, 0.0);
        Self::from_amplitudes(amps)
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amps(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn tail_mass(&self) -> f64 {
        self.tail_mass
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &FockVector) -> Complex64 {
        assert_eq!(self.dim(), other.dim(), "dimension mismatch");
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    pub fn probabilities(&self) -> Vec<f64> {
        self.amps.iter().map(|a| a.norm_sqr()).collect()
    }

    /// Applies `exp(i·phase·n̂/2)`, the single-mode form of the phase encoding.
    pub fn encode_phase(&self, phase: f64) -> FockVector {
        let amps = self
            .amps
            .iter()
            .enumerate()
            .map(|(n, a)| a * Complex64::from_polar(1.0, 0.5 * phase * n as f64))
            .collect();
        FockVector {
            amps,
            tail_mass: self.tail_mass,
        }
    }

    /// Variance of the quadrature `(a e^{−iφ} + a† e^{iφ})/2`.
    pub fn quadrature_variance(&self, angle: f64) -> f64 {
        let amps = &self.amps;
        let mean_a: Complex64 = (1..amps.len())
            .map(|n| amps[n - 1].conj() * amps[n] * (n as f64).sqrt())
            .sum();
        let mean_a2: Complex64 = (2..amps.len())
            .map(|n| amps[n - 2].conj() * amps[n] * ((n * (n - 1)) as f64).sqrt())
            .sum();
        let mean_n: f64 = self
            .probabilities()
            .iter()
            .enumerate()
            .map(|(n, p)| n as f64 * p)
            .sum();
        let rot = Complex64::from_polar(1.0, -angle);
        let first = 2.0 * (rot * mean_a).re;
        let second = 2.0 * (rot * rot * mean_a2).re + 2.0 * mean_n + 1.0;
        0.25 * (second - first * first)
    }
}

/// Photon-number mean, second moment and variance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhotonMoments {
    pub mean: f64,
    pub second: f64,
    pub variance: f64,
}

pub fn photon_moments(v: &FockVector) -> PhotonMoments {
    let (mut mean, mut second) = (0.0, 0.0);
    for (n, a) in v.amps.iter().enumerate() {
        let p = a.norm_sqr();
        let n = n as f64;
        mean += n * p;
        second += n * n * p;
    }
    PhotonMoments {
        mean,
        second,
        variance: second - mean * mean,
    }
}

/// Applies `generators` in order to `|0⟩` in a basis of `2·dim` levels, then truncates to
/// `dim` and renormalizes. Fails if the discarded weight is not below `tail_tol`.
pub(crate) fn prepare(
    generators: &[LadderGenerator],
    dim: usize,
    tail_tol: f64,
) -> Result<FockVector> {
    let work = 2 * dim;
    let mut v = vec![Complex64::new(0.0, 0.0); work];
    v[0] = Complex64::new(1.0, 0.0);
    for g in generators {
        debug_assert_eq!(g.dim(), work);
        v = expm_action(g, &v);
    }
    let tail: f64 = v[dim..].iter().map(|a| a.norm_sqr()).sum();
    if tail >= tail_tol {
        return Err(Error::TailMass {
            tail,
            tol: tail_tol,
            dim,
        });
    }
    v.truncate(dim);
    let norm = v.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    v.iter_mut().for_each(|a| *a /= norm);
    Ok(FockVector {
        amps: v,
        tail_mass: tail,
    })
}

pub(crate) fn check_tail_tol(tail_tol: f64) -> Result<()> {
    if !(tail_tol > 0.0 && tail_tol < 1.0) {
        return Err(invalid(
            "tail_tol",
            format!("must lie in (0, 1), got {tail_tol}"),
        ));
    }
    Ok(())
}

/// `D(α)S(ξ)|0⟩` on `dim` levels with the default tail tolerance.
pub fn dsv_state(p: &DsvParams, dim: usize) -> Result<FockVector> {
    dsv_state_with_tol(p, dim, DEFAULT_TAIL_TOL)
}

pub fn dsv_state_with_tol(p: &DsvParams, dim: usize, tail_tol: f64) -> Result<FockVector> {
    check_dim(dim)?;
    check_tail_tol(tail_tol)?;
    displacement_guard(p.alpha(), dim)?;
    squeeze_guard(p.r, dim)?;
    let work = 2 * dim;
    prepare(
        &[
            LadderGenerator::squeeze(p.xi(), work),
            LadderGenerator::displacement(p.alpha(), work),
        ],
        dim,
        tail_tol,
    )
}
