//! Error type shared by every module of the engine.

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed input tables: dangling ids, wrong arity, mistyped components.
    #[error("structural error: {0}")]
    Structural(String),

    /// A structure failed its axioms where a valid one was required.
    #[error("invalid {what}: {detail}")]
    Invalid { what: String, detail: String },

    /// A computed set would exceed the configured cardinality ceiling.
    #[error("resource ceiling exceeded: {what} needs {needed} elements (ceiling {ceiling})")]
    Ceiling {
        what: String,
        needed: usize,
        ceiling: usize,
    },

    /// A pushforward left the generated functor set.
    #[error("closure failure: {0}")]
    Closure(String),

    /// The target category cannot produce the requested colimit.
    #[error("colimit unavailable: {0}")]
    NoColimit(String),

    /// A probe cocone does not commute, so no mediating morphism exists.
    #[error("not a cocone: {0}")]
    NotACocone(String),

    /// Arguments live in incompatible places (e.g. different fibers).
    #[error("domain error: {0}")]
    Domain(String),

    /// A required cocartesian lift does not exist.
    #[error("not cocartesian: {0}")]
    NotCocartesian(String),

    /// A required lax structure component has no candidate morphism.
    #[error("no candidate component: {0}")]
    NoCandidate(String),
}

impl Error {
    pub fn structural(msg: impl Into<String>) -> Self {
        Error::Structural(msg.into())
    }

    pub fn invalid(what: impl Into<String>, detail: impl Into<String>) -> Self {
        Error::Invalid {
            what: what.into(),
            detail: detail.into(),
        }
    }

    pub fn is_resource(&self) -> bool {
        matches!(self, Error::Ceiling { .. })
    }
}
