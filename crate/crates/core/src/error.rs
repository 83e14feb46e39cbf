use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// Malformed or inconsistent input.
    #[error("invalid input: {0}")]
    Invalid(String),
    /// A coherent-configuration or rainbow axiom failed.
    #[error("axiom violation: {0}")]
    Axiom(String),
    /// Numerics disagree with the combinatorial structure.
    #[error("numerical failure: {0}")]
    Numeric(String),
    /// A configured size or work bound was exceeded.
    #[error("resource bound exceeded: {0}")]
    Bound(String),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub fn is_resource(&self) -> bool {
        matches!(self, Error::Bound(_))
    }
}

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Invalid(msg.into()))
}
