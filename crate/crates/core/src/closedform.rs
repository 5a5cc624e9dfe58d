//! Closed-form quantum Fisher information, photon-number moments and accuracy limits.
//!
//! The QFI for the phase difference of a DSV probe against a vacuum idler equals the
//! photon-number variance of the probe. Everything here depends on the phases only through
//! `x = φ − θ/2`, and only via `cos 2x`.

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::params::{mean_photon, DsvParams};

/// The four accuracy limits plus the moments they are built from.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MetrologyReport {
    #[serde(with = "crate::emit::float")]
    pub qfi: f64,
    #[serde(with = "crate::emit::float")]
    pub n_bar: f64,
    #[serde(with = "crate::emit::float")]
    pub n_sq_bar: f64,
    #[serde(with = "crate::emit::float")]
    pub cramer_rao: f64,
    #[serde(with = "crate::emit::float")]
    pub shot_noise: f64,
    #[serde(with = "crate::emit::float")]
    pub heisenberg: f64,
    #[serde(with = "crate::emit::float")]
    pub hofmann: f64,
    /// `cramer_rao − hofmann`; `+inf` when both limits are infinite (vacuum).
    #[serde(with = "crate::emit::float")]
    pub delta: f64,
    pub measurements: u32,
}

fn cos_two_x(p: &DsvParams) -> f64 {
    (2.0 * p.phi - p.theta).cos()
}

/// QFI `I₋₋` of the DSV probe, i.e. `Var(n̂)`.
///
/// Evaluated as `2 sinh²r cosh²r + |α|²[cosh 2r − sinh 2r cos 2x]`.
pub fn qfi_dsv(p: &DsvParams) -> f64 {
    let (s, c) = (p.r.sinh(), p.r.cosh());
    let a2 = p.alpha_mag * p.alpha_mag;
    let two_r = 2.0 * p.r;
    2.0 * s * s * c * c + a2 * (two_r.cosh() - two_r.sinh() * cos_two_x(p))
}

/// Mean-square photon number `⟨n̂²⟩`.
pub fn mean_sq_photon(p: &DsvParams) -> f64 {
    let (s, c) = (p.r.sinh(), p.r.cosh());
    let (s2, a2) = (s * s, p.alpha_mag * p.alpha_mag);
    a2 * a2 - a2 * (2.0 * s * c * cos_two_x(p) - 1.0)
        + s2 * c * c
        + (4.0 * a2 + 1.0) * s2
        + 2.0 * s2 * s2
}

fn reciprocal_sqrt(x: f64) -> f64 {
    if x > 0.0 {
        1.0 / x.sqrt()
    } else {
        f64::INFINITY
    }
}

/// Cramér–Rao, shot-noise, Heisenberg and Hofmann limits for `measurements` repetitions.
pub fn limits(p: &DsvParams, measurements: u32) -> Result<MetrologyReport> {
    if measurements == 0 {
        return Err(invalid("measurements", "must be >= 1"));
    }
    let qfi = qfi_dsv(p);
    let n_bar = mean_photon(p);
    let n_sq_bar = mean_sq_photon(p);
    let cramer_rao = reciprocal_sqrt(f64::from(measurements) * qfi);
    let hofmann = reciprocal_sqrt(n_sq_bar);
    let delta = if cramer_rao.is_infinite() && hofmann.is_infinite() {
        f64::INFINITY
    } else {
        cramer_rao - hofmann
    };
    Ok(MetrologyReport {
        qfi,
        n_bar,
        n_sq_bar,
        cramer_rao,
        shot_noise: reciprocal_sqrt(n_bar),
        heisenberg: if n_bar > 0.0 {
            1.0 / n_bar
        } else {
            f64::INFINITY
        },
        hofmann,
        delta,
        measurements,
    })
}
