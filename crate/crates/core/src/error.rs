use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// A thermodynamic or state argument outside the admissible set.
    #[error("domain error: {0}")]
    Domain(String),

    /// An invalid grid, scheme or problem configuration.
    #[error("configuration error: {0}")]
    Config(String),

    /// A time step produced an inadmissible cell average.
    #[error("step failed at t = {time}: {reason}")]
    Step { time: f64, reason: String },

    /// A problem setup could not be constructed.
    #[error("setup error: {0}")]
    Setup(String),

    /// Two fields cannot be compared (mismatched grids, non-dyadic resolutions).
    #[error("diagnostic error: {0}")]
    Diagnostic(String),

    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn config(msg: impl Into<String>) -> Self {
        Error::Config(msg.into())
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
