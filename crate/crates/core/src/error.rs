use std::path::PathBuf;

/// Everything that can go wrong in this crate: bad physical inputs, singular
/// closed forms, integrator misconfiguration, and sweep output I/O.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// A quantity violated its physical constraint; `name` is the offending
    /// field or argument.
    #[error("{name}: {message}")]
    Domain { name: &'static str, message: String },

    /// Quality factor requested for a zero-damping configuration.
    #[error("undamped: quality factor is undefined at zero damping")]
    Undamped,

    /// Undamped response evaluated exactly at resonance, where the steady
    /// state does not exist.
    #[error("resonance singularity: undamped response diverges when drive_freq equals natural frequency")]
    ResonanceSingularity,

    /// Invalid run configuration (integrator step, sweep grid, calibration
    /// target).
    #[error("{message}")]
    Config { message: String },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
}

impl Error {
    pub fn domain(name: &'static str, message: impl Into<String>) -> Self {
        Error::Domain {
            name,
            message: message.into(),
        }
    }

    pub fn config(message: impl Into<String>) -> Self {
        Error::Config {
            message: message.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
