//! Error type shared by every module in the crate.

/// Everything that can go wrong: a violated precondition on a mathematical
/// operation, or a syntax error in one of the textual input forms.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// A domain precondition failed (value out of range, bad index, ...).
    #[error("{0}")]
    Domain(String),
    /// Malformed textual input; `pos` is the byte offset of the offending token.
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

impl Error {
    pub fn domain(msg: impl Into<String>) -> Error {
        Error::Domain(msg.into())
    }

    pub fn parse(pos: usize, msg: impl Into<String>) -> Error {
        Error::Parse {
            pos,
            msg: msg.into(),
        }
    }
}
