use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Errors raised by the library. Every variant knows which part of the
/// toolkit produced it and which process exit code the CLI maps it to.
#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("[{module}] invalid argument: {message}")]
    InvalidArgument {
        module: &'static str,
        message: String,
    },

    #[error("[{module}] hypothesis not satisfied: {message}")]
    Hypothesis {
        module: &'static str,
        message: String,
    },

    #[error("[{module}] graph is disconnected")]
    Disconnected { module: &'static str },

    #[error("[{module}] graph has {n} vertices, exceeding the exhaustive cap of {cap}")]
    CapExceeded {
        module: &'static str,
        n: usize,
        cap: usize,
    },

    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    pub fn parse(location: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse {
            location: location.into(),
            message: message.into(),
        }
    }

    pub fn invalid(module: &'static str, message: impl Into<String>) -> Self {
        Error::InvalidArgument {
            module,
            message: message.into(),
        }
    }

    pub fn hypothesis(module: &'static str, message: impl Into<String>) -> Self {
        Error::Hypothesis {
            module,
            message: message.into(),
        }
    }

    /// Name of the module that raised the error.
    pub fn module(&self) -> &'static str {
        match self {
            Error::Parse { .. } | Error::Io(_) | Error::InvalidGraph(_) => "io",
            Error::InvalidArgument { module, .. }
            | Error::Hypothesis { module, .. }
            | Error::Disconnected { module }
            | Error::CapExceeded { module, .. } => module,
            Error::Internal(_) => "internal",
        }
    }

    /// Process exit code: 2 parse/load, 3 hypothesis, 4 cap, 5 internal.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse { .. } | Error::Io(_) | Error::InvalidGraph(_) => 2,
            Error::InvalidArgument { .. } | Error::Hypothesis { .. } | Error::Disconnected { .. } => 3,
            Error::CapExceeded { .. } => 4,
            Error::Internal(_) => 5,
        }
    }
}
