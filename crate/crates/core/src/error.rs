//! Crate-wide error type.
//!
//! Errors fall into three classes, and the CLI maps each class to a distinct
//! exit code: bad input or failed validation (1), a verified mathematical
//! identity failing to hold (2), and internal assertion failures that indicate
//! a bug in the crate itself (3).

use thiserror::Error;

/// Coarse classification of an [`Error`], used for process exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    /// Malformed input, unmet precondition, or failed validation.
    Input,
    /// A theorem-level identity that should hold for valid input did not.
    Theorem,
    /// Internal invariant broke; indicates a bug, not bad input.
    Internal,
}

#[derive(Debug, Error)]
pub enum Error {
    // ---- exact ----
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("basis vectors are dependent: rank {rank} < {expected}")]
    RankDeficient { rank: usize, expected: usize },
    #[error("subspace is not invariant under the matrix")]
    NotInvariant,
    #[error("polynomial division leaves a nonzero remainder")]
    InexactDivision,
    #[error("division by zero")]
    DivisionByZero,
    #[error("linear system is inconsistent")]
    Inconsistent,
    #[error("cannot parse rational literal {0:?}")]
    BadRational(String),

    // ---- fan ----
    #[error("gram matrix is not symmetric positive definite")]
    BadGram,
    #[error("zero vector cannot generate a ray")]
    ZeroRay,
    #[error("fan validation failed: {0}")]
    InvalidFan(String),
    #[error("fan is not simplicial: {0}")]
    NotSimplicial(String),
    #[error("fan is not complete: {0}")]
    NotComplete(String),
    #[error("polytope error: {0}")]
    BadPolytope(String),
    #[error("cone with rays {0:?} is not in the fan")]
    NoSuchCone(Vec<usize>),

    // ---- symmetry ----
    #[error("matrix does not preserve the gram form")]
    NotOrthogonal,
    #[error("the action's group and the root system's group differ")]
    GroupMismatch,
    #[error("group generation exceeded the element cap {0}")]
    GroupTooLarge(usize),
    #[error("root system check failed: {0}")]
    BadRootSystem(String),
    #[error("group element {element} does not preserve the fan: {witness}")]
    NotFanInvariant { element: usize, witness: String },
    #[error("action is not proper: element {element} stabilizes cone {cone:?} without fixing its rays")]
    NotProper { element: usize, cone: Vec<usize> },
    #[error("orbit of cone {cone:?} meets the dominant chamber in {count} cones, expected exactly 1")]
    OrbitRepresentative { cone: Vec<usize>, count: usize },
    #[error("simple reflection {root} neither fixes the rays of cone {cone:?} nor swaps exactly one pair")]
    SwapDichotomy { root: usize, cone: Vec<usize> },
    #[error("point stabilizer is not generated by the simple reflections it contains")]
    NotParabolic,
    #[error("no orthogonal decomposition found: {0}")]
    MoreauFailed(String),

    // ---- srring / charformula / hybrid ----
    #[error("linear system of parameters is not invariant under element {0}")]
    LsopNotInvariant(usize),
    #[error("character routes disagree: {0}")]
    CharacterMismatch(String),
    #[error("theorem check failed: {0}")]
    TheoremViolation(String),
    #[error("socle check failed: {0}")]
    SocleFailure(String),
    #[error("volume element relation failed on ridge {0:?}")]
    VolumeElement(Vec<usize>),
    #[error("hybrid builders disagree: {0}")]
    HybridMismatch(String),
    #[error("point location failed: {0}")]
    LocateFailed(String),

    // ---- io ----
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("cannot parse {path}: {message}")]
    BadFile { path: String, message: String },

    #[error("internal assertion failed: {0}")]
    Internal(String),
}

impl Error {
    pub fn class(&self) -> ErrorClass {
        use Error::*;
        match self {
            CharacterMismatch(_) | TheoremViolation(_) | SocleFailure(_) | VolumeElement(_)
            | HybridMismatch(_) | OrbitRepresentative { .. } | SwapDichotomy { .. }
            | NotParabolic => ErrorClass::Theorem,
            Internal(_) | NotInvariant | Inconsistent | LocateFailed(_) | MoreauFailed(_)
            | LsopNotInvariant(_) => ErrorClass::Internal,
            _ => ErrorClass::Input,
        }
    }
}
