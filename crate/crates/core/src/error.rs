use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("validation error: {0}")]
    Validation(String),

    #[error("degenerate geometry: {0}")]
    Degenerate(String),

    #[error("topology error: {0}")]
    Topology(String),

    #[error("parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },

    #[error("unbound name `{name}` (bound names: {})", bound.join(", "))]
    Unbound { name: String, bound: Vec<String> },

    #[error("result contains the unbounded outer cell and has no finite boundary")]
    UnboundedResult,

    #[error("{context}: {message}")]
    Format { context: String, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("{stage}: {source}")]
    Stage { stage: &'static str, source: Box<Error> },
}

impl Error {
    pub(crate) fn dim(msg: impl Into<String>) -> Self {
        Error::Dimension(msg.into())
    }

    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::Validation(msg.into())
    }

    pub(crate) fn degenerate(msg: impl Into<String>) -> Self {
        Error::Degenerate(msg.into())
    }

    pub(crate) fn topology(msg: impl Into<String>) -> Self {
        Error::Topology(msg.into())
    }

    pub(crate) fn format(context: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Format { context: context.into(), message: message.into() }
    }

    /// Process exit code used by the command line front end:
    /// 2 validation, 3 geometry degeneracy, 4 I/O.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Dimension(_)
            | Error::Validation(_)
            | Error::Parse { .. }
            | Error::Unbound { .. }
            | Error::UnboundedResult => 2,
            Error::Degenerate(_) | Error::Topology(_) => 3,
            Error::Format { .. } | Error::Io(_) => 4,
            Error::Stage { source, .. } => source.exit_code(),
        }
    }
}
