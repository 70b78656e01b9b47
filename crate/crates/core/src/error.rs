use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch in {context}: expected {expected}, got {got}")]
    Dimension {
        context: &'static str,
        expected: usize,
        got: usize,
    },

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is not symmetric: |m[{i}][{j}] - m[{j}][{i}]| = {gap:e}")]
    NotSymmetric { i: usize, j: usize, gap: f64 },

    #[error("non-finite entry at index {index}")]
    NonFinite { index: usize },

    #[error("values must be sorted descending (index {index})")]
    Unsorted { index: usize },

    #[error("invalid set: {0}")]
    InvalidSet(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("{method} did not converge after {iterations} iterations (last iterate {last:?})")]
    NoConvergence {
        method: &'static str,
        iterations: usize,
        last: Vec<f64>,
    },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("at iteration {k} (x = {x:?}): {source}")]
    AtIterate {
        k: usize,
        x: Vec<f64>,
        #[source]
        source: Box<Error>,
    },

    #[error("generation gave up after {rejections} rejections (acceptance rate {acceptance_rate:.4})")]
    Generation {
        rejections: usize,
        acceptance_rate: f64,
    },

    #[error("invalid field `{field}`: {message}")]
    Field { field: &'static str, message: String },

    #[error("malformed instance file: {0}")]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
