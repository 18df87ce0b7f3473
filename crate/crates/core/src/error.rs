//! Shared error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Caller handed in something outside an operation's contract.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A resource guard tripped; the message names the override.
    #[error("resource guard: {0}")]
    Guard(String),

    /// Input polynomial has a repeated factor; carries the offending gcd.
    #[error("not squarefree: repeated factor {factor} of degree {degree}")]
    NotSquarefree { factor: String, degree: usize },

    /// An internal cross-check failed; indicates a bug, not bad input.
    #[error("internal consistency violation: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
