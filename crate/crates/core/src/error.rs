use thiserror::Error;

/// Errors produced by construction and verification routines.
///
/// Every fallible operation in this crate returns one of these variants
/// rather than panicking, so callers (in particular the CLI) can map
/// failures onto exit codes and diagnostics.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Two vectors or matrices with incompatible shapes were combined.
    #[error("dimension mismatch: {context}: expected {expected}, got {got}")]
    DimensionMismatch {
        context: &'static str,
        expected: usize,
        got: usize,
    },

    /// A matrix that must be invertible is singular.
    #[error("matrix is singular ({context})")]
    NotInvertible { context: &'static str },

    /// A vector that must lie in the root set (or be zero) does not.
    #[error("vector is not a root of the system and is not zero ({context})")]
    NotInMembership { context: &'static str },

    /// Group closure exceeded the configured element cap.
    #[error("group closure exceeded cap of {cap} elements")]
    ClosureCapExceeded { cap: usize },

    /// The supplied root data violates a structural requirement.
    #[error("invalid root data: {0}")]
    InvalidRootSystem(String),

    /// The aligned pair fails the one-dimensional-centre gate.
    ///
    /// Carries the measured centre so callers can report what was found.
    #[error("nilradical centre is {dim}-dimensional (need exactly 1); centre roots: {roots:?}")]
    NotClassC { dim: usize, roots: Vec<String> },

    /// A claimed basis does not span, or is not independent.
    #[error("bad basis: {0}")]
    BadBasis(String),

    /// A reflection or induced map failed a consistency check.
    #[error("inconsistent map: {0}")]
    InconsistentMap(String),

    /// A rational could not be represented in the requested integer width.
    #[error("rational out of representable range: {0}")]
    NumericOverflow(String),
}

pub type Result<T> = std::result::Result<T, Error>;
