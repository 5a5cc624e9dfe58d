use std::fs;
use std::io::Write;
use std::path::PathBuf;

use num_complex::Complex64;
use serde::Serialize;

use dsv_metrology::emit::{self, format_float, Format, Output};
use dsv_metrology::fock::{
    auto_dim, check_reorder, dsv_state_with_tol, photon_moments, qfi_fidelity_of,
};
use dsv_metrology::params::VACUUM_QUADRATURE_VARIANCE;
use dsv_metrology::sweep::{
    grid_density, sweep_nbar, sweep_phase, GridResult, GridSpec, SweepAxis, SweepSpec, Table,
};
use dsv_metrology::{
    error_ellipse, limits, mean_photon, mean_sq_photon, qfi_dsv, DsvParams, MetrologyReport,
};

use crate::args::*;
use crate::Failure;

/// Relative agreement required between closed forms and photon-number moments.
pub const MOMENT_TOL: f64 = 1e-6;
/// Relative agreement required of the fidelity-based QFI, whose error is O(dphi²).
pub const FIDELITY_TOL: f64 = 1e-3;
/// Fidelity required of the displacement-reordering identity.
pub const REORDER_TOL: f64 = 1e-8;

/// Rendered command output, plus a failure to report after it has been written.
pub(crate) struct Rendered {
    pub text: String,
    pub output: PathBuf,
    pub failure: Option<Failure>,
}

impl Rendered {
    fn ok(text: String, out: &OutputArgs) -> Self {
        Self {
            text,
            output: out.output.clone(),
            failure: None,
        }
    }

    /// Writes the text to standard output or to the `--output` file.
    pub fn write(self, stdout: &mut dyn Write) -> Result<(), Failure> {
        if self.output.as_os_str() == "-" {
            stdout
                .write_all(self.text.as_bytes())
                .map_err(|e| Failure::Compute(format!("writing to standard output: {e}")))?;
        } else {
            fs::write(&self.output, &self.text)
                .map_err(|e| Failure::Compute(format!("writing {}: {e}", self.output.display())))?;
        }
        match self.failure {
            Some(f) => Err(f),
            None => Ok(()),
        }
    }
}

pub(crate) fn dispatch(cmd: &Command) -> Result<Rendered, Failure> {
    match cmd {
        Command::Limits(a) => cmd_limits(a),
        Command::SweepPhase(a) => cmd_sweep_phase(a),
        Command::SweepNbar(a) => cmd_sweep_nbar(a),
        Command::Grid(a) => cmd_grid(a),
        Command::Oracle(a) => cmd_oracle(a),
        Command::Ellipse(a) => cmd_ellipse(a),
    }
}

fn probe(args: &ProbeArgs) -> Result<DsvParams, Failure> {
    let p = match args.phase {
        Some(x) => DsvParams::with_phase(args.alpha, args.r, x)?,
        None => DsvParams::new(args.alpha, args.phi, args.r, args.theta)?,
    };
    Ok(p)
}

fn to_json<T: Serialize>(value: &T) -> Result<String, Failure> {
    let mut s = serde_json::to_string_pretty(value)
        .map_err(|e| Failure::Compute(format!("serialization failed: {e}")))?;
    s.push('\n');
    Ok(s)
}

/// `key = value` lines.
fn to_text(pairs: &[(&str, String)]) -> String {
    pairs.iter().map(|(k, v)| format!("{k} = {v}\n")).collect()
}

/// One header line and one value line.
fn to_csv_record(pairs: &[(&str, String)]) -> String {
    let keys: Vec<&str> = pairs.iter().map(|(k, _)| *k).collect();
    let values: Vec<&str> = pairs.iter().map(|(_, v)| v.as_str()).collect();
    format!("{}\n{}\n", keys.join(","), values.join(","))
}

fn render_record<T: Serialize>(
    format: OutputFormat,
    value: &T,
    pairs: &[(&str, String)],
) -> Result<String, Failure> {
    match format {
        OutputFormat::Json => to_json(value),
        OutputFormat::Text => Ok(to_text(pairs)),
        OutputFormat::Csv => Ok(to_csv_record(pairs)),
    }
}

#[derive(Serialize)]
struct ProbeEcho {
    alpha_mag: f64,
    phi: f64,
    r: f64,
    theta: f64,
    phase_sensitive: f64,
}

impl From<&DsvParams> for ProbeEcho {
    fn from(p: &DsvParams) -> Self {
        Self {
            alpha_mag: p.alpha_mag,
            phi: p.phi,
            r: p.r,
            theta: p.theta,
            phase_sensitive: p.phase_sensitive(),
        }
    }
}

fn probe_pairs(p: &DsvParams) -> Vec<(&'static str, String)> {
    vec![
        ("alpha_mag", format_float(p.alpha_mag)),
        ("phi", format_float(p.phi)),
        ("r", format_float(p.r)),
        ("theta", format_float(p.theta)),
        ("phase_sensitive", format_float(p.phase_sensitive())),
    ]
}

#[derive(Serialize)]
struct LimitsOutput {
    params: ProbeEcho,
    #[serde(flatten)]
    report: MetrologyReport,
}

fn cmd_limits(a: &LimitsArgs) -> Result<Rendered, Failure> {
    let p = probe(&a.probe)?;
    let report = limits(&p, a.measurements)?;
    let mut pairs = probe_pairs(&p);
    pairs.extend([
        ("qfi", format_float(report.qfi)),
        ("n_bar", format_float(report.n_bar)),
        ("n_sq_bar", format_float(report.n_sq_bar)),
        ("cramer_rao", format_float(report.cramer_rao)),
        ("shot_noise", format_float(report.shot_noise)),
        ("heisenberg", format_float(report.heisenberg)),
        ("hofmann", format_float(report.hofmann)),
        ("delta", format_float(report.delta)),
        ("measurements", report.measurements.to_string()),
    ]);
    let out = LimitsOutput {
        params: (&p).into(),
        report,
    };
    let text = render_record(a.format, &out, &pairs)?;
    Ok(Rendered::ok(text, &a.out))
}

fn table_format(format: OutputFormat) -> Result<Format, Failure> {
    match format {
        OutputFormat::Csv => Ok(Format::Csv),
        OutputFormat::Json => Ok(Format::Json),
        OutputFormat::Text => Err(Failure::Usage(
            "sweeps and grids support csv or json, not text".into(),
        )),
    }
}

fn emit_output(
    output: Output<'_>,
    format: OutputFormat,
    out: &OutputArgs,
) -> Result<Rendered, Failure> {
    let text = emit::render(output, table_format(format)?)?;
    Ok(Rendered::ok(text, out))
}

fn cmd_sweep_phase(a: &SweepPhaseArgs) -> Result<Rendered, Failure> {
    table_format(a.format)?;
    let fixed = DsvParams::new(a.alpha, 0.0, a.r, 0.0)?;
    let spec = SweepSpec::new(
        SweepAxis::Phase,
        a.start,
        a.stop,
        a.points,
        fixed,
        a.measurements,
    )?;
    let table: Table = sweep_phase(&spec)?;
    emit_output(Output::Table(&table), a.format, &a.out)
}

fn cmd_sweep_nbar(a: &SweepNbarArgs) -> Result<Rendered, Failure> {
    table_format(a.format)?;
    let fixed = DsvParams::with_phase(0.0, 0.0, a.phase)?;
    let spec = SweepSpec::new(
        SweepAxis::NBar,
        a.start,
        a.stop,
        a.points,
        fixed,
        a.measurements,
    )?;
    let table = sweep_nbar(&spec, &a.r_values)?;
    emit_output(Output::Table(&table), a.format, &a.out)
}

fn cmd_grid(a: &GridArgs) -> Result<Rendered, Failure> {
    table_format(a.format)?;
    let spec = GridSpec::new(
        a.alpha_max,
        a.r_max,
        a.alpha_points,
        a.r_points,
        a.phase,
        a.measurements,
    )?;
    let grid: GridResult = grid_density(&spec)?;
    emit_output(Output::Grid(&grid), a.format, &a.out)
}

#[derive(Serialize)]
struct Comparison {
    quantity: &'static str,
    #[serde(with = "dsv_metrology::emit::float")]
    closed_form: f64,
    #[serde(with = "dsv_metrology::emit::float")]
    oracle: f64,
    #[serde(with = "dsv_metrology::emit::float")]
    rel_diff: f64,
    #[serde(with = "dsv_metrology::emit::float")]
    tolerance: f64,
    pass: bool,
}

fn compare(quantity: &'static str, closed_form: f64, oracle: f64, tolerance: f64) -> Comparison {
    let abs = (oracle - closed_form).abs();
    // a vanishing closed form is compared absolutely
    let rel_diff = if closed_form.abs() > 0.0 {
        abs / closed_form.abs()
    } else {
        abs
    };
    Comparison {
        quantity,
        closed_form,
        oracle,
        rel_diff,
        tolerance,
        pass: rel_diff <= tolerance,
    }
}

#[derive(Serialize)]
struct OracleOutput {
    params: ProbeEcho,
    dim: usize,
    #[serde(with = "dsv_metrology::emit::float")]
    tail_mass: f64,
    #[serde(with = "dsv_metrology::emit::float")]
    dphi: f64,
    comparisons: Vec<Comparison>,
    /// `None` when the reordered displacement exceeds the truncation guard at this dim.
    reorder_fidelity: Option<f64>,
    pass: bool,
}

fn cmd_oracle(a: &OracleArgs) -> Result<Rendered, Failure> {
    let p = probe(&a.probe)?;
    if !(1e-6..=1e-2).contains(&a.dphi) {
        return Err(Failure::Usage(format!(
            "--dphi must lie in [1e-6, 1e-2], got {}",
            a.dphi
        )));
    }
    let dim = match a.dim {
        Some(d) => d,
        None => auto_dim(&p, a.tail_tol)?,
    };
    let state = dsv_state_with_tol(&p, dim, a.tail_tol)?;
    let moments = photon_moments(&state);
    let comparisons = vec![
        compare("n_bar", mean_photon(&p), moments.mean, MOMENT_TOL),
        compare("n_sq_bar", mean_sq_photon(&p), moments.second, MOMENT_TOL),
        compare("qfi_variance", qfi_dsv(&p), moments.variance, MOMENT_TOL),
        compare(
            "qfi_fidelity",
            qfi_dsv(&p),
            qfi_fidelity_of(&state, a.dphi),
            FIDELITY_TOL,
        ),
    ];
    let reorder_fidelity = match check_reorder(&p, dim) {
        Ok(f) => Some(f),
        Err(
            dsv_metrology::Error::TruncationGuard { .. } | dsv_metrology::Error::TailMass { .. },
        ) => None,
        Err(e) => return Err(e.into()),
    };
    let reorder_ok = reorder_fidelity.is_none_or(|f| f >= 1.0 - REORDER_TOL);
    let pass = comparisons.iter().all(|c| c.pass) && reorder_ok;

    let mut pairs = probe_pairs(&p);
    pairs.push(("dim", dim.to_string()));
    pairs.push(("tail_mass", format_float(state.tail_mass())));
    pairs.push(("dphi", format_float(a.dphi)));
    let labels: Vec<(String, String)> = comparisons
        .iter()
        .flat_map(|c| {
            [
                (
                    format!("{}_closed_form", c.quantity),
                    format_float(c.closed_form),
                ),
                (format!("{}_oracle", c.quantity), format_float(c.oracle)),
                (format!("{}_rel_diff", c.quantity), format_float(c.rel_diff)),
            ]
        })
        .collect();
    pairs.extend(labels.iter().map(|(k, v)| (k.as_str(), v.clone())));
    pairs.push((
        "reorder_fidelity",
        reorder_fidelity.map_or_else(|| "unavailable".to_string(), format_float),
    ));
    pairs.push(("pass", pass.to_string()));

    let failing: Vec<&str> = comparisons
        .iter()
        .filter(|c| !c.pass)
        .map(|c| c.quantity)
        .collect();
    let out = OracleOutput {
        params: (&p).into(),
        dim,
        tail_mass: state.tail_mass(),
        dphi: a.dphi,
        comparisons,
        reorder_fidelity,
        pass,
    };
    let text = render_record(a.format, &out, &pairs)?;
    let mut rendered = Rendered::ok(text, &a.out);
    if !pass {
        let mut names = failing.join(", ");
        if !reorder_ok {
            if !names.is_empty() {
                names.push_str(", ");
            }
            names.push_str("reorder_fidelity");
        }
        rendered.failure = Some(Failure::Compute(format!(
            "oracle disagreement beyond tolerance: {names}"
        )));
    }
    Ok(rendered)
}

#[derive(Serialize)]
struct EllipseOutput {
    params: ProbeEcho,
    center_re: f64,
    center_im: f64,
    semi_major: f64,
    semi_minor: f64,
    orientation: f64,
    vacuum_sigma: f64,
}

fn cmd_ellipse(a: &EllipseArgs) -> Result<Rendered, Failure> {
    let p = probe(&a.probe)?;
    let e = error_ellipse(&p);
    let center: Complex64 = e.center;
    let vacuum_sigma = VACUUM_QUADRATURE_VARIANCE.sqrt();
    let mut pairs = probe_pairs(&p);
    pairs.extend([
        ("center_re", format_float(center.re)),
        ("center_im", format_float(center.im)),
        ("semi_major", format_float(e.semi_major)),
        ("semi_minor", format_float(e.semi_minor)),
        ("orientation", format_float(e.orientation)),
        ("vacuum_sigma", format_float(vacuum_sigma)),
    ]);
    let out = EllipseOutput {
        params: (&p).into(),
        center_re: center.re,
        center_im: center.im,
        semi_major: e.semi_major,
        semi_minor: e.semi_minor,
        orientation: e.orientation,
        vacuum_sigma,
    };
    let text = render_record(a.format, &out, &pairs)?;
    Ok(Rendered::ok(text, &a.out))
}
