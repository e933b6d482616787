use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("qubit {qubit} is outside 1..={n}")]
    QubitOutOfRange { qubit: usize, n: usize },

    #[error("qubit {0} listed more than once")]
    DuplicateQubit(usize),

    #[error("subsystem selection is empty")]
    EmptySubsystem,

    #[error("{n} qubits exceeds the {kind} limit of {limit}")]
    SizeLimit {
        kind: &'static str,
        n: usize,
        limit: usize,
    },

    #[error("operator is not Hermitian (max |A - A^dagger| = {0:e})")]
    NotHermitian(f64),

    #[error("operator is not positive semidefinite (eigenvalue {0:e})")]
    NotPositive(f64),

    #[error("operator is not a density matrix (trace {0})")]
    NotDensity(f64),

    #[error("Jacobi eigensolver did not converge after {0} sweeps")]
    NoConvergence(usize),

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("invalid error specification: {0}")]
    InvalidErrorSpec(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("expected a {expected} report, got {found}")]
    WrongMetric {
        expected: &'static str,
        found: &'static str,
    },
}
