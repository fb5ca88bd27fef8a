use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An input does not satisfy the documented precondition of an operation.
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// The involution was applied to its unique fixed point `(∅, ∅)`.
    #[error("fixed point: alpha and beta are both empty")]
    FixedPoint,

    /// `I_N` was asked to handle a pair that belongs to the `I_K` branch.
    #[error("wrong case: vertex {vertex} is unsaturated under A1, route to I_K")]
    WrongCase { vertex: u32 },

    /// A map produced a value that breaks one of its invariants.
    #[error("invariant broken: {0}")]
    Invariant(String),

    /// A computed quantity is inconsistent with its defining identity.
    #[error("integrity error: {0}")]
    Integrity(String),

    #[error("unknown family `{0}`")]
    UnknownFamily(String),

    #[error("parse error: {0}")]
    Parse(String),

    /// The requested exhaustive run exceeds the documented feasibility bound.
    #[error("infeasible: {0}")]
    Infeasible(String),
}
