use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    /// A sieve limit beyond the configured memory budget.
    #[error("sieve limit {requested} exceeds the configured capacity {max}")]
    Capacity { requested: u64, max: u64 },

    /// An argument outside the range supported by a table or grid.
    #[error("argument {value} out of range: {context}")]
    Range { value: f64, context: &'static str },

    /// Evaluation requested outside an analyticity domain or strip.
    #[error("outside evaluation domain: {0}")]
    Domain(String),

    /// Evaluation exactly at a pole.
    #[error("pole at {0}")]
    Pole(String),

    /// Evaluation too close to a singularity for the requested route.
    #[error("too close to a singularity: {0}")]
    NearSingularity(String),

    /// A contour radius outside a signal's analyticity window.
    #[error("radius {radius} not inside analyticity window {window:?}")]
    Window { radius: f64, window: Option<f64> },

    /// Adaptive quadrature exhausted its depth without meeting tolerance.
    #[error("quadrature did not converge (error estimate {estimate:e})")]
    NonConvergence { estimate: f64 },

    /// An evaluator configured with insufficient resolution for a request.
    #[error("configuration: {0}")]
    Config(String),

    /// An unknown signal, series, or model name.
    #[error("unknown name: {0}")]
    UnknownName(String),

    /// A malformed sieve cache file.
    #[error("cache: {0}")]
    CacheFormat(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Process exit status for the CLI: 2 for validation/domain problems,
    /// 3 for numerical non-convergence.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::NonConvergence { .. } => 3,
            _ => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
