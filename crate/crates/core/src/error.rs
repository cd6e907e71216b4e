use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("wavelength {wavelength_um} um outside Sellmeier range [{min_um}, {max_um}] um")]
    OutOfRange {
        wavelength_um: f64,
        min_um: f64,
        max_um: f64,
    },

    /// |k_perp| >= k: the mode does not propagate.
    #[error("non-propagating configuration: |k_perp| = {k_perp} rad/m >= k = {k} rad/m")]
    Evanescent { k_perp: f64, k: f64 },

    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error("config error at `{key}`: {message}")]
    Config { key: String, message: String },

    #[error("degenerate axis: {0}")]
    DegenerateAxis(String),

    #[error("numerical failure: {0}")]
    Numerical(String),

    /// Root bracket has no sign change; the model has no crossing in range.
    #[error("out of model: {0}")]
    OutOfModel(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn invariant(msg: impl Into<String>) -> Self {
        Error::Invariant(msg.into())
    }

    pub(crate) fn config(key: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Config {
            key: key.into(),
            message: message.into(),
        }
    }

    /// Process exit status for the command-line driver: 1 for bad input, 2
    /// for failures inside the numerics.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Invariant(_) | Error::Config { .. } | Error::DegenerateAxis(_) | Error::Io(_) => 1,
            Error::OutOfRange { .. }
            | Error::Evanescent { .. }
            | Error::Numerical(_)
            | Error::OutOfModel(_) => 2,
        }
    }
}
