//! Phase sweeps, mean-photon sweeps with their attainable envelope, and `(|α|, r)` grids.
//!
//! Phases are realized as `φ = x, θ = 0`; only `φ − θ/2` enters the limits, so nothing is lost.
//! Cells are independent and evaluated through [`Execution`], so parallel and sequential runs
//! give identical tables.

mod grid;

pub use grid::{grid_density, grid_density_with, GridResult, GridSpec, Optimum, MAX_GRID_CELLS};

use serde::{Deserialize, Serialize};

use crate::closedform::limits;
use crate::error::{invalid, Result};
use crate::parallel::Execution;
use crate::params::DsvParams;

/// Samples of the dense squeezing grid behind the mean-photon envelope.
pub const ENVELOPE_POINTS: usize = 400;

pub const PHASE_COLUMNS: [&str; 5] = ["x", "cramer_rao", "shot_noise", "heisenberg", "hofmann"];
pub const NBAR_COLUMNS: [&str; 5] = ["n_bar", "r", "cramer_rao", "envelope_min", "envelope_max"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepAxis {
    Phase,
    NBar,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepSpec {
    pub axis: SweepAxis,
    pub start: f64,
    pub stop: f64,
    pub points: usize,
    /// Template for the parameters that are not swept.
    pub fixed: DsvParams,
    pub measurements: u32,
}

impl SweepSpec {
    pub fn new(
        axis: SweepAxis,
        start: f64,
        stop: f64,
        points: usize,
        fixed: DsvParams,
        measurements: u32,
    ) -> Result<Self> {
        if !(start.is_finite() && stop.is_finite()) || start >= stop {
            return Err(invalid(
                "start/stop",
                format!("need finite start < stop, got {start}..{stop}"),
            ));
        }
        if points < 2 {
            return Err(invalid("points", format!("must be >= 2, got {points}")));
        }
        if axis == SweepAxis::NBar && start < 0.0 {
            return Err(invalid("start", "mean photon number cannot be negative"));
        }
        if measurements == 0 {
            return Err(invalid("measurements", "must be >= 1"));
        }
        Ok(Self {
            axis,
            start,
            stop,
            points,
            fixed,
            measurements,
        })
    }

    pub fn samples(&self) -> Vec<f64> {
        linspace(self.start, self.stop, self.points)
    }
}

/// Column-labelled rows of floats.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Table {
    pub columns: Vec<String>,
    #[serde(with = "crate::emit::float_matrix")]
    pub rows: Vec<Vec<f64>>,
}

impl Table {
    pub fn new(columns: &[&str], rows: Vec<Vec<f64>>) -> Self {
        Self {
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows,
        }
    }

    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let idx = self.columns.iter().position(|c| c == name)?;
        Some(self.rows.iter().map(|r| r[idx]).collect())
    }
}

/// `points` evenly spaced values from `start` to `stop` inclusive.
pub fn linspace(start: f64, stop: f64, points: usize) -> Vec<f64> {
    match points {
        0 => Vec::new(),
        1 => vec![start],
        _ => {
            let last = points - 1;
            (0..points)
                .map(|i| {
                    if i == last {
                        stop
                    } else {
                        start + (stop - start) * (i as f64 / last as f64)
                    }
                })
                .collect()
        }
    }
}

/// Limits against the phase-sensitive angle `x`.
pub fn sweep_phase(spec: &SweepSpec) -> Result<Table> {
    sweep_phase_with(spec, Execution::default())
}

pub fn sweep_phase_with(spec: &SweepSpec, exec: Execution) -> Result<Table> {
    if spec.axis != SweepAxis::Phase {
        return Err(invalid("axis", "sweep_phase needs a phase axis"));
    }
    let xs = spec.samples();
    let rows = exec.map_indexed(xs.len(), |i| {
        let x = xs[i];
        let p = DsvParams {
            phi: x,
            theta: 0.0,
            ..spec.fixed
        };
        limits(&p, spec.measurements).map(|rep| {
            vec![
                x,
                rep.cramer_rao,
                rep.shot_noise,
                rep.heisenberg,
                rep.hofmann,
            ]
        })
    });
    Ok(Table::new(
        &PHASE_COLUMNS,
        rows.into_iter().collect::<Result<_>>()?,
    ))
}

/// Cramér–Rao limit along lines of constant `r` as the mean photon number varies, with the
/// min/max over every attainable squeezing at each `n̄`.
///
/// For each line the displacement is `|α|² = n̄ − sinh²r`; samples with `n̄ < sinh²r` are
/// skipped. Rows are grouped by line, in the order of `r_values`.
pub fn sweep_nbar(spec: &SweepSpec, r_values: &[f64]) -> Result<Table> {
    sweep_nbar_with(spec, r_values, Execution::default())
}

pub fn sweep_nbar_with(spec: &SweepSpec, r_values: &[f64], exec: Execution) -> Result<Table> {
    if spec.axis != SweepAxis::NBar {
        return Err(invalid("axis", "sweep_nbar needs an n_bar axis"));
    }
    for &r in r_values {
        if !(r.is_finite() && r >= 0.0) {
            return Err(invalid(
                "r_values",
                format!("squeezing must be finite and >= 0, got {r}"),
            ));
        }
        if r.sinh().powi(2) > spec.stop {
            return Err(invalid(
                "r_values",
                format!(
                    "sinh^2({r}) = {} exceeds the sweep stop {}",
                    r.sinh().powi(2),
                    spec.stop
                ),
            ));
        }
    }
    let nbars = spec.samples();
    let cr_at = |n_bar: f64, r: f64| -> Result<f64> {
        let alpha_sq = (n_bar - r.sinh().powi(2)).max(0.0);
        let p = DsvParams {
            alpha_mag: alpha_sq.sqrt(),
            r,
            ..spec.fixed
        };
        Ok(limits(&p, spec.measurements)?.cramer_rao)
    };

    // per n̄: (line values, envelope min, envelope max)
    let per_nbar = exec.map_indexed(nbars.len(), |i| -> Result<(Vec<Option<f64>>, f64, f64)> {
        let n_bar = nbars[i];
        let r_cap = n_bar.sqrt().asinh();
        let lines: Vec<Option<f64>> = r_values
            .iter()
            .map(|&r| {
                if r.sinh().powi(2) <= n_bar {
                    cr_at(n_bar, r).map(Some)
                } else {
                    Ok(None)
                }
            })
            .collect::<Result<_>>()?;
        let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
        for r in linspace(0.0, r_cap, ENVELOPE_POINTS) {
            let cr = cr_at(n_bar, r)?;
            lo = lo.min(cr);
            hi = hi.max(cr);
        }
        for cr in lines.iter().flatten() {
            lo = lo.min(*cr);
            hi = hi.max(*cr);
        }
        Ok((lines, lo, hi))
    });
    let per_nbar: Vec<_> = per_nbar.into_iter().collect::<Result<_>>()?;

    let mut rows = Vec::new();
    for (k, &r) in r_values.iter().enumerate() {
        for (n_bar, (lines, lo, hi)) in nbars.iter().zip(&per_nbar) {
            if let Some(cr) = lines[k] {
                rows.push(vec![*n_bar, r, cr, *lo, *hi]);
            }
        }
    }
    Ok(Table::new(&NBAR_COLUMNS, rows))
}
