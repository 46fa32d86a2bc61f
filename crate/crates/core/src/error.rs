use thiserror::Error;

/// Errors produced by the numerical routines and the command-line layer.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A series was asked for at a point where it has no finite value.
    #[error("divergence: {0}")]
    Divergence(String),

    /// A truncation could not be certified within the allowed number of terms.
    #[error("precision error: {message} (best tail bound {best_bound:e})")]
    Precision { message: String, best_bound: f64 },

    /// The radius equation never changes sign on the search interval.
    #[error("no root: D(r) has constant sign on the search interval (D(lo) = {d_lo:e}, D(hi) = {d_hi:e})")]
    NoRoot { d_lo: f64, d_hi: f64 },

    /// More than one sign change was found, so the minimal root is not unique to a cell.
    #[error("ambiguous root: sign changes in cells {cells:?}")]
    Ambiguous { cells: Vec<(f64, f64)> },

    /// Malformed coefficient input.
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn precision(msg: impl Into<String>, best_bound: f64) -> Self {
        Error::Precision {
            message: msg.into(),
            best_bound,
        }
    }
}
