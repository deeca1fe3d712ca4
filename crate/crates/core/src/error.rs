//! Error types shared by all modules.

use crate::laurent::ExceptionalStatus;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument left the mathematical domain of the operation
    /// (evaluation at 0, identity at sin θ = 0, and the like).
    #[error("domain error: {0}")]
    Domain(String),

    /// The input is too degenerate to analyze (e.g. a constant polynomial,
    /// whose image is a point and whose self-intersection count is
    /// undefined).
    #[error("degenerate input: {0}")]
    DegenerateInput(String),

    /// Too few samples for the requested Fourier truncation.
    #[error("insufficient samples: need at least {needed}, got {got}")]
    InsufficientSamples { needed: usize, got: usize },

    /// Parameters outside the hypotheses of the operation.
    #[error("range error: {0}")]
    Range(String),

    /// All sampled Sylvester determinants vanished; the pairing system is
    /// structurally degenerate.
    #[error("singular system: {0}")]
    SingularSystem(String),

    /// The polynomial falls in one of the exceptional classes where the
    /// self-intersection set may be infinite; no count is produced.
    #[error("exceptional input: {0}")]
    ExceptionalInput(ExceptionalStatus),

    /// The computed count exceeded the theorem bound. This indicates a
    /// numerical failure and is never returned as a silent result.
    #[error("bound violation: counted {count} self-intersections, bound is {bound}")]
    BoundViolation { count: usize, bound: u64 },

    /// The oracle accepted far more pairs than the theorem bound allows,
    /// signalling a continuum of self-intersections.
    #[error("oracle saturation: {accepted} pairs accepted against bound {bound}")]
    Saturation { accepted: usize, bound: u64 },

    /// The path planner found no obstacle-avoiding connection.
    #[error("no path found: {0}")]
    NoPathFound(String),

    /// Neither closure of the reconnected arc yields a positively
    /// oriented curve.
    #[error("orientation failure: no closure with positive signed area")]
    OrientationFailure,

    /// No excision width in the retry ladder produced disjoint simple arcs.
    #[error("excision failure: {0}")]
    ExcisionFailure(String),

    /// Perturbation failed to reach a generic configuration.
    #[error("genericity failure after {0} attempts")]
    GenericityFailure(u32),

    /// The certified approximation error exceeds the requested budget.
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
}

pub type Result<T> = std::result::Result<T, Error>;
