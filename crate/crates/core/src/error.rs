use thiserror::Error;

/// Which group axiom a Cayley table failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GroupAxiom {
    Associativity,
    Identity,
    Inverse,
}

impl std::fmt::Display for GroupAxiom {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            GroupAxiom::Associativity => "associativity",
            GroupAxiom::Identity => "identity",
            GroupAxiom::Inverse => "inverse",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("carrier must be non-empty")]
    EmptyCarrier,
    #[error("expected {expected} entries, found {found}")]
    WrongLength { expected: usize, found: usize },
    #[error("index {index} out of range for carrier of size {size}")]
    OutOfRange { index: usize, size: usize },
    #[error("images do not form a permutation of 0..{size}")]
    NotAPermutation { size: usize },
    #[error("group axiom violated: {axiom} (witness {witness:?})")]
    GroupAxiom { axiom: GroupAxiom, witness: Vec<usize> },
    #[error("multiplication is not associative at ({0}, {1}, {2})")]
    NotAssociative(usize, usize, usize),
    #[error("map is not an idempotent endomorphism: {0}")]
    NotIdempotentEndomorphism(String),
    #[error("maps are not commuting idempotents: {0}")]
    NotCommutingIdempotents(String),
    #[error("permutation violates the exponent condition at label {label}")]
    SigmaCondition { label: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("input is not an involutive solution of the pentagon equation")]
    NotInvolutiveSolution,
    #[error("solution is not irretractable")]
    NotIrretractable,
    #[error("carrier sizes differ: {0} vs {1}")]
    SizeMismatch(usize, usize),
    #[error("carrier size {size} exceeds the configured bound {bound}")]
    BoundExceeded { size: usize, bound: usize },
    #[error("resource budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("unsupported size {size}: {reason}")]
    UnsupportedSize { size: usize, reason: &'static str },
    #[error("internal inconsistency: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
