use thiserror::Error;

/// Errors surfaced by the witness constructions and numeric scans.
///
/// Variants distinguish "the input is mathematically incapable of producing
/// a witness" (e.g. [`Error::FamilyUniformlyBounded`]) from genuine failures
/// of the computation (stalls, overflow, broken preconditions). Callers that
/// drive scans with budgets receive the progress made so far.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A vector touched coordinates outside a matrix operator's ambient dimension.
    #[error("index {index} outside truncation dimension {dim}")]
    IndexOutOfTruncation { index: usize, dim: usize },

    /// Power iteration did not push the iterate movement below tolerance
    /// within the iteration budget. Retrying with a different seed or a
    /// looser tolerance may help.
    #[error("power iteration stalled after {iters} iterations: residual {residual:e} above tolerance {tol:e}")]
    PowerIterationStall {
        residual: f64,
        tol: f64,
        iters: usize,
    },

    /// A near-maximizer was requested for an operator of norm zero.
    #[error("operator norm is zero; no near-maximizer exists")]
    ZeroOperator,

    /// The candidate direction certifiably fails the requested quality bound
    /// against a lower bound on the operator norm.
    #[error("near-maximizer quality not met: achieved {achieved:e} < required {required:e}")]
    QualityNotMet { achieved: f64, required: f64 },

    /// No norm growth chain of the requested depth exists in the finite
    /// sample. This is the finite-sample reading of "the family is uniformly
    /// bounded": a larger sample may still contain a chain.
    #[error("no growth chain of depth {requested} in the sample (reached depth {reached}); family is uniformly bounded as sampled")]
    FamilyUniformlyBounded { requested: usize, reached: usize },

    /// A fact that is a theorem in exact arithmetic failed under rounding.
    #[error("internal invariant violated: {0}")]
    InternalInvariantViolation(String),

    /// A computed quantity left the range of finite binary64 values.
    #[error("non-finite value detected: {0}")]
    OverflowDetected(String),

    /// The finite input sequence ran out before the requested number of
    /// subsequence picks; `picks` reports how far the recursion got.
    #[error("sample exhausted after {picks} of {requested} picks")]
    SampleExhausted { picks: usize, requested: usize },

    /// A convergent-series operation was asked of a divergent input.
    #[error("series is not convergent: {0}")]
    NotConvergent(String),

    /// A divergent-series operation was asked of a convergent input.
    #[error("series is not divergent: {0}")]
    NotDivergent(String),

    /// The term budget ran out before the scan reached its target.
    #[error(
        "term budget {budget} exhausted after scanning {scanned} terms (partial sum {partial_sum})"
    )]
    HorizonExceeded {
        budget: u64,
        scanned: u64,
        partial_sum: f64,
    },

    /// A scanned term broke the caller-supplied pointwise comparison bound
    /// `y_n^2 >= c/n`, so the claimed growth hypothesis does not hold.
    #[error("hypothesis y_n^2 >= c/n violated at n = {n}: {lhs:e} < {rhs:e}")]
    HypothesisViolated { n: u64, lhs: f64, rhs: f64 },

    /// Adaptive quadrature could not meet the tolerance within its panel
    /// budget; `achieved` is the error estimate it did reach.
    #[error(
        "quadrature budget exceeded: achieved error estimate {achieved:e} above tolerance {tol:e}"
    )]
    QuadratureBudgetExceeded { achieved: f64, tol: f64 },

    /// A documented precondition of an operation was violated.
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// Malformed or inconsistent input data.
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
