//! Truncated Fock-space oracle.
//!
//! States are built from the vacuum by exponentiating the ladder-operator generators of
//! `D(α)` and `S(ξ)`, and every closed-form quantity is then recomputed from the amplitudes.
//!
//! Truncation is checked by measurement. Each state is built on twice the requested number of
//! levels, and the weight that lands at or above the requested dimension is the recorded tail
//! mass.
//!
//! The QFI of a pure state is `4(⟨∂ψ|∂ψ⟩ − |⟨∂ψ|ψ⟩|²)`. Printed with a `+` the formula would
//! overshoot `4 Var(G)` by `8|⟨∂ψ|ψ⟩|²`; [`qfi_overlap`] uses the minus sign.
//!
//! With the idler mode in vacuum, `G₋ = ½(n̂_a − n̂_b)` acts as `n̂_a/2`, so the production
//! paths work on the signal mode alone. [`check_two_mode_reduction`] verifies that reduction on
//! the joint space. The encoding phase `exp(+i φ₋ n̂/2)` is fixed; its sign does not affect any
//! QFI.

mod checks;
mod ladder;
mod operator;
mod state;

pub use checks::{
    auto_dim, check_reorder, check_two_mode_reduction, derivative, qfi_fidelity, qfi_fidelity_of,
    qfi_overlap, AUTO_DIM_CAP, AUTO_DIM_START, TWO_MODE_MAX_DIM, TWO_MODE_TAIL_TOL,
};
pub use ladder::{expm_action, LadderGenerator};
pub use operator::{build_displacement, build_squeeze, OperatorMatrix, EXPM_TOL};
pub use state::{
    dsv_state, dsv_state_with_tol, photon_moments, FockVector, PhotonMoments, DEFAULT_TAIL_TOL,
};
