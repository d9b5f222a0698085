use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DimacsError {
    #[error("i/o error: {0}")]
    Io(String),
    #[error("missing `p cnf` header")]
    MissingHeader,
    #[error("malformed header on line {0}")]
    BadHeader(usize),
    #[error("malformed literal {1:?} on line {0}")]
    BadLiteral(usize, String),
    #[error("atom {0} exceeds declared atom count {1}")]
    AtomOutOfRange(u32, u32),
    #[error("header declares {declared} clauses, found {found}")]
    ClauseCount { declared: usize, found: usize },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModelError {
    #[error("variable {0} has an empty domain")]
    EmptyDomain(String),
    #[error("duplicate variable name {0}")]
    DuplicateName(String),
    #[error("unknown variable id {0}")]
    UnknownVariable(usize),
    #[error("table constraint tuple has arity {found}, expected {expected}")]
    ArityMismatch { expected: usize, found: usize },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CompileError {
    #[error("constraint kind {0} has no encoding rule")]
    UnsupportedConstraint(&'static str),
    #[error("variable {name} has {size} values, above the indicator budget of {budget}")]
    DomainTooLarge {
        name: String,
        size: usize,
        budget: usize,
    },
    #[error(transparent)]
    Model(#[from] ModelError),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DecodeError {
    #[error("variable {var} has {count} true indicators in the CNF model")]
    InconsistentModel { var: String, count: usize },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SolverError {
    #[error("solver backend failure: {0}")]
    BackendFailure(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FamilyError {
    #[error("unknown family {0:?}")]
    UnknownFamily(String),
    #[error("invalid parameters for {family}: {reason}")]
    InvalidParams { family: String, reason: String },
    #[error("family {0} has no variable-data sampler")]
    NoSampler(String),
    #[error("family {0} provides neither a constraint model nor a native certifier")]
    EncodingUnavailable(String),
    #[error("variable data does not match family {0}")]
    DataMismatch(String),
    #[error(transparent)]
    Compile(#[from] CompileError),
    #[error(transparent)]
    Solver(#[from] SolverError),
}
