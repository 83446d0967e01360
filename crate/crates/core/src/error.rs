use thiserror::Error;

/// Crate-wide error type. The variants line up with the CLI exit codes
/// (usage 2, cap 3, I/O 4, schema 5).
#[derive(Debug, Error)]
pub enum Error {
    #[error("usage error: {0}")]
    Usage(String),

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("unsupported configuration: {0}")]
    Unsupported(String),

    #[error("enumeration cap reached: {0}")]
    CapReached(String),

    #[error("I/O error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("schema error in field `{field}`: {message}")]
    Schema { field: String, message: String },
}

impl Error {
    pub(crate) fn usage(msg: impl Into<String>) -> Self {
        Error::Usage(msg.into())
    }

    pub(crate) fn schema(field: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Schema {
            field: field.into(),
            message: message.into(),
        }
    }

    /// Process exit code for this error.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Usage(_) | Error::Parse { .. } | Error::Unsupported(_) => 2,
            Error::CapReached(_) => 3,
            Error::Io { .. } => 4,
            Error::Schema { .. } => 5,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
