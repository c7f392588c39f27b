use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("resource limit exceeded: {what} is {value}, limit is {limit}")]
    ResourceLimit {
        what: &'static str,
        value: u128,
        limit: u128,
    },

    /// The exact path refused to run because a coefficient could exceed the
    /// integer width.
    #[error("exact arithmetic overflow: {0}")]
    Overflow(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_limit(what: &'static str, value: u128, limit: u128) -> Result<()> {
    if value > limit {
        Err(Error::ResourceLimit { what, value, limit })
    } else {
        Ok(())
    }
}
