use thiserror::Error;

/// Errors raised across the library.
///
/// Most variants carry enough context (indices, shapes, the violated
/// condition) to be reported directly by the command-line tool.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch in {op}: {left:?} vs {right:?}")]
    DimensionMismatch {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },

    #[error("matrix is singular")]
    Singular,

    #[error("expected an even dimension, got {0}")]
    OddDimension(usize),

    #[error("{what} too large: n = {n}, limit is {max}")]
    TooLarge {
        what: &'static str,
        n: usize,
        max: usize,
    },

    #[error("not a Lagrangian subspace: {0}")]
    NotLagrangian(String),

    #[error("qubit count mismatch: {0} vs {1}")]
    QubitMismatch(usize, usize),

    #[error("matrix is not symplectic{0}")]
    NotSymplectic(String),

    #[error("matrix is not an involution{0}")]
    NotInvolution(String),

    #[error("elements {0} and {1} do not commute")]
    NotCommuting(usize, usize),

    #[error("representation is not in block form: {0}")]
    NotBlockForm(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error("operator is not a Clifford operator: {0}")]
    NotClifford(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
