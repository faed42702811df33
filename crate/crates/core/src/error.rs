use thiserror::Error;

/// Errors raised anywhere in the library.
///
/// The variants line up with the CLI exit codes: `Domain` and `PreDelay` are
/// usage errors, `Budget` is a resource error, and `Invariant` means an exact
/// identity that should hold did not.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("enumeration budget exceeded: {columns} columns requested, budget is {budget}")]
    Budget { columns: String, budget: u64 },

    #[error("n < N_r = {delay}: the closed form is only valid from n = {delay} on, use brute force for n = {n}")]
    PreDelay { n: u64, delay: u64 },

    #[error("invariant violated: {0}")]
    Invariant(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn invariant(msg: impl Into<String>) -> Self {
        Error::Invariant(msg.into())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
