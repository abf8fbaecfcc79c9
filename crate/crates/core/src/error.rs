use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("degenerate denominator in the coupling formula (D = {0:e})")]
    DegenerateDenominator(f64),

    #[error("invalid couplings: {0}")]
    InvalidCouplings(String),

    #[error("input matrix is not Hermitian (max deviation {0:e})")]
    NonHermitianInput(f64),

    #[error("state vector is not normalized (norm {0})")]
    NotNormalized(f64),

    #[error("biseparable region is empty for r+ = {0}")]
    EmptyRegion(f64),

    #[error("predicate does not change sign on [{lo}, {hi}]")]
    BracketError { lo: f64, hi: f64 },

    #[error("{what} did not converge after {iterations} iterations")]
    ConvergenceFailure { what: &'static str, iterations: usize },
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    /// True for failures of an iterative solver rather than of the inputs.
    pub fn is_convergence(&self) -> bool {
        matches!(self, Error::ConvergenceFailure { .. } | Error::BracketError { .. })
    }
}
