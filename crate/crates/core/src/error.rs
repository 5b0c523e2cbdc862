use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension error: {0}")]
    Dimension(String),

    #[error("shape mismatch: left is {left_rows}x{left_cols}, right is {right_rows}x{right_cols}")]
    Shape {
        left_rows: usize,
        left_cols: usize,
        right_rows: usize,
        right_cols: usize,
    },

    #[error("unsupported parameters: {0}")]
    Unsupported(String),

    /// Input fails the defining equations of the group or algebra it was passed as.
    #[error("domain error: {0}")]
    Domain(String),

    /// A field could not be evaluated, e.g. a quotient whose denominator vanishes.
    #[error("evaluation failed{}: {message}", direction.map(|d| format!(" along basis direction {d}")).unwrap_or_default())]
    Evaluation {
        direction: Option<usize>,
        message: String,
    },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    pub(crate) fn evaluation(message: impl Into<String>) -> Self {
        Error::Evaluation {
            direction: None,
            message: message.into(),
        }
    }

    /// Tags an evaluation error with the basis direction it occurred along.
    pub(crate) fn along(self, k: usize) -> Self {
        match self {
            Error::Evaluation { message, .. } => Error::Evaluation {
                direction: Some(k),
                message,
            },
            other => other,
        }
    }

    pub(crate) fn shape(lr: usize, lc: usize, rr: usize, rc: usize) -> Self {
        Error::Shape {
            left_rows: lr,
            left_cols: lc,
            right_rows: rr,
            right_cols: rc,
        }
    }
}
