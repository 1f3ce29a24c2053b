use std::fmt;

use thiserror::Error;

/// A single failed axiom instance, with the elements that witness it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomViolation {
    pub law: &'static str,
    pub witness: Vec<usize>,
}

impl fmt::Display for AxiomViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} fails at {:?}", self.law, self.witness)
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("shape error: {0}")]
    Shape(String),

    #[error("{} axiom violation(s), first: {}", .0.len(), .0[0])]
    Axioms(Vec<AxiomViolation>),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("partition is not compatible with the operations: {0}")]
    IncompatiblePartition(String),

    #[error("maps are not composable: {0}")]
    NotComposable(String),

    #[error("not a linear map: {0}")]
    NotLinear(String),

    #[error("limit exceeded: {0}")]
    LimitExceeded(String),

    #[error("hypothesis unmet: {0}")]
    HypothesisUnmet(String),

    #[error("internal cross-check failed: {0}")]
    Crosscheck(String),

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("lattice is not distributive: a={0}, b={1}, c={2}")]
    NotDistributive(usize, usize, usize),

    #[error("degenerate structure: {0}")]
    Degenerate(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse { line, msg: msg.into() }
    }

    /// The individual violations, when this is an axiom failure.
    pub fn violations(&self) -> &[AxiomViolation] {
        match self {
            Error::Axioms(v) => v,
            _ => &[],
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
