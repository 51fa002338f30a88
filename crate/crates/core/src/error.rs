use thiserror::Error;

/// Errors raised by the solver stack.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A caller broke an operation's precondition.
    #[error("contract violation: {0}")]
    Contract(String),

    /// An input or intermediate value left the domain where it is defined.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("unknown catalog problem `{0}`")]
    UnknownProblem(String),

    /// The state blew past the divergence guard (or became non-finite).
    #[error("solution diverged at step {step} (|y| = {norm:e})")]
    Divergence { step: usize, norm: f64 },
}

impl Error {
    pub(crate) fn contract(msg: impl Into<String>) -> Self {
        Error::Contract(msg.into())
    }

    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
