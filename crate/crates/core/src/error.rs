use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// A coefficient or nonlinearity produced a non-finite value.
    #[error("non-finite evaluation of {what} at t={t}")]
    Evaluation { what: String, t: f64 },

    /// A structural hypothesis on the problem instance does not hold.
    #[error("hypothesis violation: {0}")]
    Hypothesis(String),

    #[error("domain error: {0}")]
    Domain(String),

    /// The operator was applied to a state too close to the singularity at 0.
    #[error("singular input: min_t sum_i |u_i(t)| = {min_shell:e} is below the guard {floor:e}")]
    SingularInput { min_shell: f64, floor: f64 },

    #[error("no convergence after {iterations} iterations (last residual {residual:e})")]
    NonConvergence {
        iterations: usize,
        residual: f64,
        history: Vec<f64>,
    },

    /// The time integrator could not continue.
    #[error("integration failed at t={t}: {reason}")]
    Integration { t: f64, reason: String },

    #[error("config error in [{section}] {key}: {message}")]
    Config {
        section: String,
        key: String,
        message: String,
    },

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn config(section: impl Into<String>, key: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Config {
            section: section.into(),
            key: key.into(),
            message: message.into(),
        }
    }
}
