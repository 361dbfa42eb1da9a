use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("unknown problem `{0}`")]
    NotFound(String),

    #[error("invalid problem: {0}")]
    InvalidProblem(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    /// A non-finite value appeared while evaluating fluxes or advancing the solution.
    #[error("numerical failure at {location}: {detail}")]
    NumericalFailure { location: String, detail: String },

    /// The first-order scheme is not bound preserving for this time step.
    #[error("cfl violation in cell {cell}: gamma_max = {gamma_max:e}, gamma_min = {gamma_min:e}")]
    CflViolation {
        cell: usize,
        gamma_max: f64,
        gamma_min: f64,
    },

    #[error("stream function solve: vorticity mean {mean:e} is not zero")]
    Solvability { mean: f64 },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    pub(crate) fn numerical(location: impl Into<String>, detail: impl Into<String>) -> Self {
        Error::NumericalFailure {
            location: location.into(),
            detail: detail.into(),
        }
    }
}
