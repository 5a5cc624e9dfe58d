//! Numerical routes that recompute closed-form quantities from the state itself.

use num_complex::Complex64;

use super::ladder::LadderGenerator;
use super::operator::{check_dim, displacement_guard, squeeze_guard, OperatorMatrix};
use super::state::{
    check_tail_tol, dsv_state, dsv_state_with_tol, photon_moments, prepare, FockVector,
    DEFAULT_TAIL_TOL,
};
use crate::error::{invalid, Error, Result};
use crate::params::{reorder_displacement, DsvParams};

/// Smallest dimension tried by [`auto_dim`].
pub const AUTO_DIM_START: usize = 64;
/// Largest dimension tried by [`auto_dim`].
pub const AUTO_DIM_CAP: usize = 1024;
/// Largest single-mode dimension accepted by [`check_two_mode_reduction`].
pub const TWO_MODE_MAX_DIM: usize = 32;
/// Tail tolerance used for the two-mode check, where the identity holds for any normalized
/// state and only the guards matter.
pub const TWO_MODE_TAIL_TOL: f64 = 1e-3;

fn check_dphi(dphi: f64) -> Result<()> {
    if !(1e-6..=1e-2).contains(&dphi) {
        return Err(invalid(
            "dphi",
            format!("must lie in [1e-6, 1e-2], got {dphi}"),
        ));
    }
    Ok(())
}

/// `1 − √F` between `ψ` and `exp(i·dphi·n̂/2)ψ`, evaluated without forming `1 − (≈1)`.
fn infidelity_root(v: &FockVector, dphi: f64) -> f64 {
    let (mut total, mut versine, mut sine) = (0.0, 0.0, 0.0);
    for (n, p) in v.probabilities().into_iter().enumerate() {
        let angle = 0.5 * dphi * n as f64;
        total += p;
        // 1 − cos t = 2 sin²(t/2)
        versine += p * 2.0 * (0.5 * angle).sin().powi(2);
        sine += p * angle.sin();
    }
    // F = ((total − versine)² + sine²) / total²
    let one_minus_f = (2.0 * total * versine - versine * versine - sine * sine) / (total * total);
    one_minus_f / (1.0 + (1.0 - one_minus_f).max(0.0).sqrt())
}

/// QFI from the fidelity between neighbouring encoded states, `8(1 − √F)/dphi²`.
pub fn qfi_fidelity(p: &DsvParams, dphi: f64, dim: usize) -> Result<f64> {
    check_dphi(dphi)?;
    let v = dsv_state(p, dim)?;
    Ok(qfi_fidelity_of(&v, dphi))
}

pub fn qfi_fidelity_of(v: &FockVector, dphi: f64) -> f64 {
    (8.0 * infidelity_root(v, dphi) / (dphi * dphi)).max(0.0)
}

/// QFI from the state derivative, `4(⟨∂ψ|∂ψ⟩ − |⟨∂ψ|ψ⟩|²)`, with `∂ψ` taken by a central
/// difference of the encoded state.
pub fn qfi_overlap(p: &DsvParams, dphi: f64, dim: usize) -> Result<f64> {
    check_dphi(dphi)?;
    let v = dsv_state(p, dim)?;
    let d = derivative(&v, dphi);
    Ok(4.0 * (d.norm_sqr() - d.inner(&v).norm_sqr()))
}

/// Central-difference derivative of the encoded state at zero phase.
pub fn derivative(v: &FockVector, dphi: f64) -> FockVector {
    let plus = v.encode_phase(dphi);
    let minus = v.encode_phase(-dphi);
    let amps = plus
        .amps()
        .iter()
        .zip(minus.amps())
        .map(|(a, b)| (a - b) / (2.0 * dphi))
        .collect();
    FockVector::from_amplitudes(amps)
}

/// Fidelity between `S(ξ)D(α)|0⟩` and `D(β)S(ξ)|0⟩`, with `β` from [`reorder_displacement`].
pub fn check_reorder(p: &DsvParams, dim: usize) -> Result<f64> {
    check_dim(dim)?;
    let beta = reorder_displacement(p);
    displacement_guard(p.alpha(), dim)?;
    displacement_guard(beta, dim)?;
    squeeze_guard(p.r, dim)?;
    let work = 2 * dim;
    let squeeze = LadderGenerator::squeeze(p.xi(), work);
    let left = prepare(
        &[
            LadderGenerator::displacement(p.alpha(), work),
            squeeze.clone(),
        ],
        dim,
        DEFAULT_TAIL_TOL,
    )?;
    let right = prepare(
        &[squeeze, LadderGenerator::displacement(beta, work)],
        dim,
        DEFAULT_TAIL_TOL,
    )?;
    Ok(left.inner(&right).norm_sqr())
}

/// `|4·Var(G₋) − Var(n̂_a)|` for the joint state `(DSV) ⊗ |0⟩`, with
/// `G₋ = ½(n̂_a ⊗ 1 − 1 ⊗ n̂_b)` built on the full tensor space.
pub fn check_two_mode_reduction(p: &DsvParams, dim: usize) -> Result<f64> {
    check_dim(dim)?;
    if dim > TWO_MODE_MAX_DIM {
        return Err(invalid(
            "dim",
            format!("two-mode check needs dim <= {TWO_MODE_MAX_DIM}, got {dim}"),
        ));
    }
    let signal = dsv_state_with_tol(p, dim, TWO_MODE_TAIL_TOL)?;
    let idler = FockVector::basis(0, dim);

    let joint: Vec<Complex64> = signal
        .amps()
        .iter()
        .flat_map(|a| idler.amps().iter().map(move |b| a * b))
        .collect();
    let id = OperatorMatrix::identity(dim);
    let number = OperatorMatrix::number(dim);
    let g_minus = number
        .kron(&id)
        .add(&id.kron(&number).scale(Complex64::new(-1.0, 0.0)))
        .scale(Complex64::new(0.5, 0.0));

    let g_psi = g_minus.apply(&joint);
    let g2_psi = g_minus.apply(&g_psi);
    let dot =
        |x: &[Complex64]| -> Complex64 { joint.iter().zip(x).map(|(a, b)| a.conj() * b).sum() };
    let var_g = dot(&g2_psi).re - dot(&g_psi).norm_sqr();

    let var_n = photon_moments(&signal).variance;
    Ok((4.0 * var_g - var_n).abs())
}

/// Smallest power-of-two dimension from [`AUTO_DIM_START`] whose DSV state has tail mass
/// below `tail_tol`.
pub fn auto_dim(p: &DsvParams, tail_tol: f64) -> Result<usize> {
    check_tail_tol(tail_tol)?;
    if tail_tol > 1e-4 {
        return Err(invalid(
            "tail_tol",
            format!("must be <= 1e-4, got {tail_tol}"),
        ));
    }
    let mut last_tail = f64::NAN;
    let mut dim = AUTO_DIM_START;
    while dim <= AUTO_DIM_CAP {
        match dsv_state_with_tol(p, dim, tail_tol) {
            Ok(_) => return Ok(dim),
            Err(Error::TailMass { tail, .. }) => last_tail = tail,
            Err(Error::TruncationGuard { .. }) => {}
            Err(e) => return Err(e),
        }
        dim *= 2;
    }
    Err(Error::DimensionCap {
        cap: AUTO_DIM_CAP,
        tol: tail_tol,
        tail: last_tail,
    })
}
