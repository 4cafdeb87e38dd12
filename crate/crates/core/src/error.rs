use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Coarse failure class, used by front ends to pick an exit status.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    Validation,
    Numerical,
    Io,
}

#[derive(Debug, Error)]
pub enum Error {
    /// Argument outside the domain where a law or model is defined.
    #[error("domain error: {0}")]
    Domain(String),
    /// Deck values that produce a physically invalid device or array.
    #[error("configuration error: {0}")]
    Config(String),
    #[error("calibration error: {0}")]
    Calibration(String),
    #[error("validation error: {0}")]
    Validation(String),
    #[error("parse error in {path}: {message}")]
    Parse { path: String, message: String },
    /// Iterative solver gave up. `trace` holds the residual history.
    #[error("solver did not converge: {message}")]
    Solver { message: String, trace: Vec<f64> },
    #[error("numerical error: {0}")]
    Numerical(String),
    #[error("target unreachable: {0}")]
    Saturation(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("{context}: {source}")]
    Context {
        context: String,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::Domain(_)
            | Error::Config(_)
            | Error::Calibration(_)
            | Error::Validation(_)
            | Error::Parse { .. } => ErrorKind::Validation,
            Error::Solver { .. } | Error::Numerical(_) | Error::Saturation(_) => {
                ErrorKind::Numerical
            }
            Error::Io(_) => ErrorKind::Io,
            Error::Context { source, .. } => source.kind(),
        }
    }

    /// Innermost error, skipping provenance wrappers.
    pub fn root(&self) -> &Error {
        match self {
            Error::Context { source, .. } => source.root(),
            other => other,
        }
    }
}

/// Attach provenance to an error as it crosses a model boundary.
pub trait Context<T> {
    fn context(self, context: impl Into<String>) -> Result<T>;
}

impl<T> Context<T> for Result<T> {
    fn context(self, context: impl Into<String>) -> Result<T> {
        self.map_err(|source| Error::Context {
            context: context.into(),
            source: Box::new(source),
        })
    }
}
