//! Probe parameters and the elementary closed-form quantities built on them.
//!
//! The probe is the displaced squeezed vacuum `D(α)S(ξ)|0⟩` with `α = |α|e^{iφ}` and
//! `ξ = r e^{iθ}`. The squeeze operator is `S(ξ) = exp(½(ξ* a² − ξ a†²))`, so for θ = 0 the
//! real quadrature is the squeezed one.
//!
//! Quadratures follow `x = (a + a†)/2`, giving a vacuum variance of 1/4.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};

/// Variance of a vacuum quadrature under the `x = (a + a†)/2` convention.
pub const VACUUM_QUADRATURE_VARIANCE: f64 = 0.25;

/// Intrinsic parameters of a displaced squeezed vacuum probe.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DsvParams {
    /// Displacement magnitude |α|.
    pub alpha_mag: f64,
    /// Displacement phase φ in radians.
    pub phi: f64,
    /// Squeezing strength r.
    pub r: f64,
    /// Squeezing phase θ in radians.
    pub theta: f64,
}

impl DsvParams {
    pub fn new(alpha_mag: f64, phi: f64, r: f64, theta: f64) -> Result<Self> {
        if !(alpha_mag.is_finite() && alpha_mag >= 0.0) {
            return Err(invalid(
                "alpha_mag",
                format!("must be finite and >= 0, got {alpha_mag}"),
            ));
        }
        if !(r.is_finite() && r >= 0.0) {
            return Err(invalid("r", format!("must be finite and >= 0, got {r}")));
        }
        if !phi.is_finite() {
            return Err(invalid("phi", "must be finite"));
        }
        if !theta.is_finite() {
            return Err(invalid("theta", "must be finite"));
        }
        Ok(Self {
            alpha_mag,
            phi,
            r,
            theta,
        })
    }

    /// Parameters with a given phase-sensitive angle `φ − θ/2`, realized as φ = `phase`, θ = 0.
    pub fn with_phase(alpha_mag: f64, r: f64, phase: f64) -> Result<Self> {
        Self::new(alpha_mag, phase, r, 0.0)
    }

    pub fn vacuum() -> Self {
        Self {
            alpha_mag: 0.0,
            phi: 0.0,
            r: 0.0,
            theta: 0.0,
        }
    }

    /// Complex displacement α.
    pub fn alpha(&self) -> Complex64 {
        Complex64::from_polar(self.alpha_mag, self.phi)
    }

    /// Complex squeezing parameter ξ.
    pub fn xi(&self) -> Complex64 {
        Complex64::from_polar(self.r, self.theta)
    }

    pub fn phase_sensitive(&self) -> f64 {
        phase_sensitive_param(self)
    }
}

/// Quadrature error ellipse in the complex-amplitude plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EllipseGeometry {
    pub center: Complex64,
    pub semi_major: f64,
    pub semi_minor: f64,
    /// Angle of the squeezed (minor) axis, θ/2.
    pub orientation: f64,
}

impl EllipseGeometry {
    pub fn area_product(&self) -> f64 {
        self.semi_major * self.semi_minor
    }
}

/// `φ − θ/2` reduced to `[0, π)`.
pub fn phase_sensitive_param(p: &DsvParams) -> f64 {
    reduce_half_turn(p.phi - 0.5 * p.theta)
}

pub(crate) fn reduce_half_turn(x: f64) -> f64 {
    let y = x.rem_euclid(PI);
    // rem_euclid can round up to exactly PI for tiny negative inputs
    if y >= PI {
        0.0
    } else {
        y
    }
}

/// Mean photon number `|α|² + sinh²r`.
pub fn mean_photon(p: &DsvParams) -> f64 {
    let s = p.r.sinh();
    p.alpha_mag * p.alpha_mag + s * s
}

/// Displacement β with `S(ξ)D(α) = D(β)S(ξ)`.
///
/// With `S(ξ) = exp(½(ξ* a² − ξ a†²))` this is `β = α cosh r − α* e^{iθ} sinh r`.
pub fn reorder_displacement(p: &DsvParams) -> Complex64 {
    let alpha = p.alpha();
    alpha * p.r.cosh() - alpha.conj() * Complex64::from_polar(1.0, p.theta) * p.r.sinh()
}

/// One-standard-deviation quadrature ellipse of the probe.
pub fn error_ellipse(p: &DsvParams) -> EllipseGeometry {
    let sigma = VACUUM_QUADRATURE_VARIANCE.sqrt();
    EllipseGeometry {
        center: p.alpha(),
        semi_major: sigma * p.r.exp(),
        semi_minor: sigma * (-p.r).exp(),
        orientation: 0.5 * p.theta,
    }
}
