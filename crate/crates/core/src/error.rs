use std::path::PathBuf;

use thiserror::Error;

/// Operator whose output was rejected.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Operator {
    Residual,
    Jacobian,
    JacobianTranspose,
    GaussNewton,
    FiniteDifference,
}

impl std::fmt::Display for Operator {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Operator::Residual => "residual",
            Operator::Jacobian => "jacobian",
            Operator::JacobianTranspose => "jacobian transpose",
            Operator::GaussNewton => "gauss-newton product",
            Operator::FiniteDifference => "finite-difference jacobian",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("{op} produced a non-finite value at index {index}")]
    NonFinite { op: Operator, index: usize },
}

#[derive(Debug, Clone, PartialEq, Error)]
#[error("no acceptable step after {halvings} halvings (last alpha {alpha:e})")]
pub struct LineSearchFailure {
    pub halvings: u32,
    pub alpha: f64,
}

#[derive(Debug, Clone, PartialEq, Error)]
#[error("invalid solver configuration: {0}")]
pub struct ConfigError(pub String);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProblemError {
    #[error("unknown problem `{0}`")]
    UnknownProblem(String),
    #[error("{id} does not accept n = {n}: {reason}")]
    DimensionMismatch {
        id: String,
        n: usize,
        reason: String,
    },
    #[error("{0} is catalogued but not implemented")]
    NotImplemented(String),
}

#[derive(Debug, Error)]
pub enum BenchError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Csv {
        path: PathBuf,
        #[source]
        source: csv::Error,
    },
    #[error("{path}, line {line}: {msg}")]
    Parse {
        path: PathBuf,
        line: usize,
        msg: String,
    },
    #[error("solver `{solver}` has no run for {problem} (n = {n})")]
    IncompleteMatrix {
        solver: String,
        problem: String,
        n: usize,
    },
    #[error("performance profile needs at least two solvers, found {0}")]
    TooFewSolvers(usize),
    #[error(transparent)]
    Problem(#[from] ProblemError),
    #[error(transparent)]
    Config(#[from] ConfigError),
}
