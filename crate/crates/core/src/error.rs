use thiserror::Error;

/// Errors raised by the library. Variants carry enough context to print a
/// one-line diagnostic.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("empty action: {0}")]
    EmptyAction(String),
    #[error("the torus weights eta_{{r+1}}..eta_n are linearly dependent")]
    DependentTorusWeights,
    #[error("the torus weights eta_{{r+1}}..eta_n are linearly independent")]
    TorusWeightsIndependent,
    #[error("the action is not transitive on the torus factor")]
    NotTransitive,
    #[error("index {index} out of range (allowed 0..{bound})")]
    IndexOutOfRange { index: usize, bound: usize },
    #[error("the weight spaces are not finite dimensional (non-constant invariants exist)")]
    NotFiniteDimensional,
    #[error("vector is not in T1 (L1 * beta != 0)")]
    NotInT1,
    #[error("vector is not in T1' (L2 * beta not divisible by the diagonal of D)")]
    NotInT1Prime,
    #[error("coordinate {0} is not a fixed coordinate (rho_j != 0)")]
    NotAFixedCoordinate(usize),
    #[error("invalid monomial: {0}")]
    InvalidMonomial(String),
    #[error("enumeration box of {points} points exceeds the limit {limit}")]
    BoxTooLarge { points: u128, limit: u64 },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("internal consistency failure: {0}")]
    InternalConsistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;
