use std::path::PathBuf;

use thiserror::Error;

/// Failures surfaced by the numerical oracle, the sweep engine and the emitters.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    /// A heuristic truncation guard rejected the request before any work was done.
    #[error("truncation guard `{guard}` failed: {value} exceeds {limit} at dim {dim}")]
    TruncationGuard {
        guard: &'static str,
        value: f64,
        limit: f64,
        dim: usize,
    },

    #[error("tail mass {tail:e} at dim {dim} is not below tolerance {tol:e}")]
    TailMass { tail: f64, tol: f64, dim: usize },

    #[error("no dimension up to {cap} reaches tail tolerance {tol:e} (last tail mass {tail:e})")]
    DimensionCap { cap: usize, tol: f64, tail: f64 },

    #[error("i/o error on {}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("serialization failed: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Error {
    Error::InvalidParameter {
        name,
        reason: reason.into(),
    }
}
