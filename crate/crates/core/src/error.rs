use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{context}: expected length {expected}, found {found}")]
    DimensionMismatch {
        context: &'static str,
        expected: usize,
        found: usize,
    },

    #[error("invalid Floer data: {invariant} violated ({detail})")]
    InvalidData { invariant: String, detail: String },

    #[error("descent obstruction: delta' composed with delta is nonzero, so u is not a chain map")]
    DescentObstruction,

    #[error("not nilpotent: {0}")]
    NotNilpotent(String),

    #[error("non-admissible input: {0}")]
    NonAdmissible(String),

    #[error("no sign configuration in the family makes the total differential square to zero")]
    NoSignConfig,

    #[error("not a cycle: {0}")]
    NotACycle(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("degree mismatch: {0}")]
    DegreeMismatch(String),

    #[error("not a lattice vector: {0}")]
    NonMember(String),

    #[error("no witness class: {0}")]
    NoWitness(String),

    #[error("unknown fixture: {0}")]
    UnknownFixture(String),

    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("{invariant}: {message}")]
    Semantic { invariant: String, message: String },

    #[error("I/O error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;
