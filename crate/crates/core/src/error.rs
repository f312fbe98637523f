use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid group: {0}")]
    InvalidGroup(String),

    /// A configured size guard refused the computation.
    #[error("guard exceeded: {what} is {value}, limit {limit}")]
    GuardExceeded {
        what: &'static str,
        value: u128,
        limit: u128,
    },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("no admissible surjection: {0}")]
    NoAdmissibleSurjection(String),

    /// A computation contradicted one of the structure theorems the crate
    /// relies on. This should never happen; the message names the witness.
    #[error("theorem violation: {0}")]
    TheoremViolation(String),
}

impl Error {
    pub fn is_guard(&self) -> bool {
        matches!(self, Error::GuardExceeded { .. })
    }

    pub fn is_violation(&self) -> bool {
        matches!(self, Error::TheoremViolation(_))
    }
}

pub(crate) fn guard(what: &'static str, value: impl Into<u128>, limit: impl Into<u128>) -> Result<()> {
    let (value, limit) = (value.into(), limit.into());
    if value > limit {
        Err(Error::GuardExceeded { what, value, limit })
    } else {
        Ok(())
    }
}
