use thiserror::Error;

/// Errors shared across the crate.
///
/// `Parse` is a malformed input file, `Domain` is a precondition violation
/// on an otherwise well-formed value, `Capacity` means the instance exceeds
/// a documented size bound (never a wrong answer).
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("domain error: {0}")]
    Domain(String),
    #[error("capacity exceeded: {what} has {got}, bound is {bound}")]
    Capacity {
        what: &'static str,
        got: usize,
        bound: usize,
    },
    /// A recognizer reject whose witness the oracle refuted. This is an
    /// internal bug alarm and is never wrapped into a certificate.
    #[error("internal soundness failure: {0}")]
    Soundness(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }
}
