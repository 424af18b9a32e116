use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("integer overflow in weight arithmetic")]
    Overflow,
    #[error("move refused ({kind}): {reason}")]
    Refused { kind: String, reason: String },
    #[error("script inapplicable in phase {phase}: {detail}")]
    Pattern { phase: String, detail: String },
    #[error("malformed record: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
