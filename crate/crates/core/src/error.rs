use thiserror::Error;

/// Errors produced by the solver library.
///
/// The variants mirror the failure kinds callers need to tell apart; the CLI
/// maps them onto process exit codes (see [`Error::exit_code`]).
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("invalid edge weight {weight} on ({u}, {v}): weights must be finite and strictly positive")]
    InvalidWeight { u: usize, v: usize, weight: f64 },

    #[error("inconsistent tree: {0}")]
    InconsistentTree(String),

    #[error("graph is disconnected; no spanning tree exists")]
    NoSpanningTree,

    #[error("infeasible degree constraint: {0}")]
    InfeasibleConstraint(String),

    #[error("greedy scan exhausted all edges before spanning under max degree {delta}")]
    ConstraintUnsatisfiedByGreedy { delta: usize },

    #[error("resource limit: {0}")]
    ResourceLimit(String),

    #[error("numerical failure: {0}")]
    NumericalFailure(String),

    #[error("degenerate normalization: return probability of vertex {vertex} is {p_stay}")]
    DegenerateNormalization { vertex: usize, p_stay: f64 },

    #[error("no valid window: selection already misses the MST at tau = {tau}")]
    NoValidWindow { tau: f64 },

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    /// Process exit code: 2 usage/input, 3 numerical, 4 resource limit.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::NumericalFailure(_) | Error::DegenerateNormalization { .. } => 3,
            Error::ResourceLimit(_) => 4,
            _ => 2,
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
