use thiserror::Error;

/// Errors raised by the algebra layers, the checkers and the dataset parser.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("rejected input: {0}")]
    Rejected(String),

    #[error("syntax error at line {line}, column {column}: {message}{}", expected_suffix(expected))]
    Syntax {
        line: usize,
        column: usize,
        message: String,
        expected: Vec<String>,
    },

    #[error("semantic error in [{section}]: {message}")]
    Semantic { section: String, message: String },

    #[error("malformed combinatorial form: {0}")]
    MalformedForm(String),

    #[error("precondition failed: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn rejected(msg: impl Into<String>) -> Error {
    Error::Rejected(msg.into())
}

pub(crate) fn shape(msg: impl Into<String>) -> Error {
    Error::ShapeMismatch(msg.into())
}

fn expected_suffix(expected: &[String]) -> String {
    if expected.is_empty() {
        String::new()
    } else {
        format!(" (expected {})", expected.join(" | "))
    }
}
