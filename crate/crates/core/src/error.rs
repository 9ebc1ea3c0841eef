use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed or inconsistent user input.
    #[error("input error: {0}")]
    Input(String),

    /// The randomized complete-intersection search gave up.
    #[error("could not construct a complete intersection: {0}")]
    Construction(String),

    /// A supplied complete intersection failed one or more checks.
    #[error("complete intersection rejected: {}", .0.join("; "))]
    CiRejected(Vec<String>),

    /// An identity that holds mathematically failed; indicates a bug.
    #[error("internal invariant violated: {0}")]
    Invariant(String),

    /// The hypothesis of the generalized Solomon-Terao criterion held but its
    /// conclusion did not.
    #[error("theorem contradiction: {0}")]
    TheoremContradiction(String),
}

impl Error {
    pub fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub fn invariant(msg: impl Into<String>) -> Self {
        Error::Invariant(msg.into())
    }

    /// Process exit code used by the command line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Input(_) | Error::CiRejected(_) | Error::Construction(_) => 2,
            Error::Invariant(_) | Error::TheoremContradiction(_) => 3,
        }
    }
}
