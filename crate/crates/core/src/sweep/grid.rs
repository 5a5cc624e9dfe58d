//! Density grids over `(|α|, r)` at fixed phase and their δ-optimal cell.

use serde::{Deserialize, Serialize};

use super::linspace;
use crate::closedform::limits;
use crate::error::{invalid, Result};
use crate::parallel::Execution;
use crate::params::DsvParams;

/// Upper bound on `alpha_points · r_points`.
pub const MAX_GRID_CELLS: usize = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub alpha_max: f64,
    pub r_max: f64,
    pub alpha_points: usize,
    pub r_points: usize,
    /// Phase-sensitive angle `φ − θ/2` shared by every cell.
    pub phase: f64,
    pub measurements: u32,
}

impl GridSpec {
    pub fn new(
        alpha_max: f64,
        r_max: f64,
        alpha_points: usize,
        r_points: usize,
        phase: f64,
        measurements: u32,
    ) -> Result<Self> {
        if !(alpha_max.is_finite() && alpha_max > 0.0) {
            return Err(invalid(
                "alpha_max",
                format!("must be finite and > 0, got {alpha_max}"),
            ));
        }
        if !(r_max.is_finite() && r_max > 0.0) {
            return Err(invalid(
                "r_max",
                format!("must be finite and > 0, got {r_max}"),
            ));
        }
        if alpha_points < 2 || r_points < 2 {
            return Err(invalid(
                "alpha_points/r_points",
                "each axis needs at least 2 points",
            ));
        }
        if alpha_points.saturating_mul(r_points) > MAX_GRID_CELLS {
            return Err(invalid(
                "alpha_points/r_points",
                format!("{alpha_points} x {r_points} exceeds {MAX_GRID_CELLS} cells"),
            ));
        }
        if !phase.is_finite() {
            return Err(invalid("phase", "must be finite"));
        }
        if measurements == 0 {
            return Err(invalid("measurements", "must be >= 1"));
        }
        Ok(Self {
            alpha_max,
            r_max,
            alpha_points,
            r_points,
            phase,
            measurements,
        })
    }

    pub fn alpha_axis(&self) -> Vec<f64> {
        linspace(0.0, self.alpha_max, self.alpha_points)
    }

    pub fn r_axis(&self) -> Vec<f64> {
        linspace(0.0, self.r_max, self.r_points)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Optimum {
    pub alpha_mag: f64,
    pub r: f64,
    #[serde(with = "crate::emit::float")]
    pub delta: f64,
}

/// Grids are indexed `[alpha index][r index]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridResult {
    pub spec: GridSpec,
    #[serde(with = "crate::emit::float_matrix")]
    pub delta_grid: Vec<Vec<f64>>,
    #[serde(with = "crate::emit::float_matrix")]
    pub cr_grid: Vec<Vec<f64>>,
    pub optimum: Optimum,
}

impl GridResult {
    /// Every cell whose δ lies within `tol` of the optimum, α-major.
    pub fn near_optimal(&self, tol: f64) -> Vec<Optimum> {
        let (alphas, rs) = (self.spec.alpha_axis(), self.spec.r_axis());
        let mut out = Vec::new();
        for (i, row) in self.delta_grid.iter().enumerate() {
            for (j, &delta) in row.iter().enumerate() {
                if delta - self.optimum.delta <= tol {
                    out.push(Optimum {
                        alpha_mag: alphas[i],
                        r: rs[j],
                        delta,
                    });
                }
            }
        }
        out
    }
}

pub fn grid_density(spec: &GridSpec) -> Result<GridResult> {
    grid_density_with(spec, Execution::default())
}

/// Fills the Cramér–Rao and δ grids and picks the cell of least δ.
///
/// Exact ties go to the smaller `|α|`, then the smaller `r`.
pub fn grid_density_with(spec: &GridSpec, exec: Execution) -> Result<GridResult> {
    let (alphas, rs) = (spec.alpha_axis(), spec.r_axis());
    let ncols = rs.len();
    let cells = exec.map_indexed(alphas.len() * ncols, |k| {
        let p = DsvParams {
            alpha_mag: alphas[k / ncols],
            phi: spec.phase,
            r: rs[k % ncols],
            theta: 0.0,
        };
        limits(&p, spec.measurements).map(|rep| (rep.cramer_rao, rep.delta))
    });
    let cells: Vec<(f64, f64)> = cells.into_iter().collect::<Result<_>>()?;

    let mut optimum = Optimum {
        alpha_mag: alphas[0],
        r: rs[0],
        delta: f64::INFINITY,
    };
    for (k, &(_, delta)) in cells.iter().enumerate() {
        if delta < optimum.delta {
            optimum = Optimum {
                alpha_mag: alphas[k / ncols],
                r: rs[k % ncols],
                delta,
            };
        }
    }
    let cr_grid = cells
        .chunks(ncols)
        .map(|row| row.iter().map(|c| c.0).collect())
        .collect();
    let delta_grid = cells
        .chunks(ncols)
        .map(|row| row.iter().map(|c| c.1).collect())
        .collect();
    Ok(GridResult {
        spec: *spec,
        delta_grid,
        cr_grid,
        optimum,
    })
}
