use thiserror::Error;

/// Errors raised by the core models and analysis routines.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// A configuration value violates one of its invariants.
    #[error("invalid configuration: `{field}` {constraint}")]
    Config {
        field: &'static str,
        constraint: String,
    },

    /// An argument to an operation is out of its domain.
    #[error("invalid argument: {0}")]
    Argument(String),

    #[error("visibility undefined: c_max + c_min = 0")]
    UndefinedVisibility,

    #[error("insufficient data: {got} points, need at least {need}")]
    InsufficientData { got: usize, need: usize },

    /// The fitter ran out of iterations. `last` holds the final iterate as
    /// `[c0, visibility, omega, x0]`.
    #[error("fit did not converge after {iterations} iterations (last iterate {last:?}, chi2 {chi2})")]
    Convergence {
        iterations: usize,
        last: [f64; 4],
        chi2: f64,
    },

    /// The delay scan does not bracket the plateau edge.
    #[error("coincidence window unidentifiable: {0}")]
    Unidentifiable(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn config(field: &'static str, constraint: impl Into<String>) -> Self {
        Error::Config {
            field,
            constraint: constraint.into(),
        }
    }
}
