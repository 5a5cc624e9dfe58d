//! Phase-estimation accuracy limits of displaced squeezed vacuum (DSV) probes.
//!
//! - [`params`]: probe parameters, phase conventions, error-ellipse geometry.
//! - [`closedform`]: QFI, photon-number moments and the Cramér–Rao, shot-noise, Heisenberg and
//!   Hofmann limits.
//! - [`fock`]: a truncated number-basis simulator that recomputes the closed forms.
//! - [`sweep`]: phase sweeps, mean-photon sweeps and `(|α|, r)` density grids.
//! - [`emit`]: deterministic CSV/JSON output.
//!
//! Loops over sweep samples and grid cells run on rayon when the `parallel` feature is on
//! (the default); see [`parallel::Execution`].

pub mod closedform;
pub mod emit;
pub mod error;
pub mod fock;
pub mod parallel;
pub mod params;
pub mod sweep;

pub use closedform::{limits, mean_sq_photon, qfi_dsv, MetrologyReport};
pub use error::{Error, Result};
pub use parallel::Execution;
pub use params::{
    error_ellipse, mean_photon, phase_sensitive_param, reorder_displacement, DsvParams,
    EllipseGeometry,
};
