//! CSV and JSON writers with deterministic float formatting.
//!
//! Floats are written as the shortest decimal that round-trips; non-finite values become
//! `inf`, `-inf` and `nan`. In JSON those are emitted as strings since JSON has no literal
//! for them.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sweep::{GridResult, Table};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

/// Shortest round-trip decimal, with `inf`/`-inf`/`nan` for non-finite values.
pub fn format_float(x: f64) -> String {
    if x.is_nan() {
        "nan".to_string()
    } else if x.is_infinite() {
        if x > 0.0 { "inf" } else { "-inf" }.to_string()
    } else {
        // `{}` prints the shortest digits that round-trip
        format!("{x}")
    }
}

pub fn parse_float(s: &str) -> Option<f64> {
    match s {
        "inf" => Some(f64::INFINITY),
        "-inf" => Some(f64::NEG_INFINITY),
        "nan" => Some(f64::NAN),
        _ => s.parse().ok(),
    }
}

/// Serde adapter: finite floats as JSON numbers, non-finite ones as strings.
pub mod float {
    use serde::{de, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
        if x.is_finite() {
            s.serialize_f64(*x)
        } else {
            s.serialize_str(&super::format_float(*x))
        }
    }

    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Repr {
        Num(f64),
        Text(String),
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
        match Repr::deserialize(d)? {
            Repr::Num(x) => Ok(x),
            Repr::Text(t) => {
                super::parse_float(&t).ok_or_else(|| de::Error::custom(format!("not a float: {t}")))
            }
        }
    }
}

/// Same as [`float`] for a row-major matrix.
pub mod float_matrix {
    use serde::ser::SerializeSeq;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    struct Cell(f64);

    impl Serialize for Cell {
        fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
            super::float::serialize(&self.0, s)
        }
    }

    #[derive(Deserialize)]
    struct CellDe(#[serde(with = "super::float")] f64);

    pub fn serialize<S: Serializer>(m: &[Vec<f64>], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(m.len()))?;
        for row in m {
            let cells: Vec<Cell> = row.iter().map(|&x| Cell(x)).collect();
            seq.serialize_element(&cells)?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Vec<f64>>, D::Error> {
        let raw: Vec<Vec<CellDe>> = Vec::deserialize(d)?;
        Ok(raw
            .into_iter()
            .map(|row| row.into_iter().map(|c| c.0).collect())
            .collect())
    }
}

pub fn table_to_csv(table: &Table) -> String {
    let mut out = table.columns.join(",");
    out.push('\n');
    for row in &table.rows {
        let line: Vec<String> = row.iter().map(|&x| format_float(x)).collect();
        out.push_str(&line.join(","));
        out.push('\n');
    }
    out
}

pub fn table_to_json(table: &Table) -> Result<String> {
    let mut s = serde_json::to_string_pretty(table)?;
    s.push('\n');
    Ok(s)
}

/// Long-format CSV of a grid: one line per cell, α-major.
pub fn grid_to_csv(grid: &GridResult) -> String {
    let mut out = String::from("alpha_mag,r,cramer_rao,delta\n");
    let (alphas, rs) = (grid.spec.alpha_axis(), grid.spec.r_axis());
    for (i, a) in alphas.iter().enumerate() {
        for (j, r) in rs.iter().enumerate() {
            out.push_str(&format!(
                "{},{},{},{}\n",
                format_float(*a),
                format_float(*r),
                format_float(grid.cr_grid[i][j]),
                format_float(grid.delta_grid[i][j])
            ));
        }
    }
    out
}

pub fn grid_to_json(grid: &GridResult) -> Result<String> {
    let mut s = serde_json::to_string_pretty(grid)?;
    s.push('\n');
    Ok(s)
}

/// Anything the sweep engine produces.
#[derive(Debug, Clone, Copy)]
pub enum Output<'a> {
    Table(&'a Table),
    Grid(&'a GridResult),
}

pub fn render(output: Output<'_>, format: Format) -> Result<String> {
    match (output, format) {
        (Output::Table(t), Format::Csv) => Ok(table_to_csv(t)),
        (Output::Table(t), Format::Json) => table_to_json(t),
        (Output::Grid(g), Format::Csv) => Ok(grid_to_csv(g)),
        (Output::Grid(g), Format::Json) => grid_to_json(g),
    }
}

/// Renders `output` and writes it to `destination`.
pub fn emit(output: Output<'_>, format: Format, destination: &Path) -> Result<()> {
    let text = render(output, format)?;
    let io_err = |source| Error::Io {
        path: PathBuf::from(destination),
        source,
    };
    let mut file = fs::File::create(destination).map_err(io_err)?;
    file.write_all(text.as_bytes()).map_err(io_err)?;
    Ok(())
}
