use thiserror::Error;

/// Everything that can go wrong across the crate.
///
/// Solver non-convergence is deliberately *not* fatal everywhere: `solve_beta`
/// reports its best iterate in a [`SolveReport`](crate::maxent_continuous::SolveReport)
/// with `converged: false`, and only the operations that cannot proceed without
/// a converged dual surface [`Error::NoConvergence`].
#[derive(Debug, Error)]
pub enum Error {
    /// A power set, profile, or moment vector failed its construction checks.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A scaled profile entry truncated to zero; the requested `n` is too
    /// small for the given moment vector.
    #[error("scaled profile entry for power {j} is zero at n = {n}")]
    ZeroEntry { j: u32, n: u64 },

    /// A dual vector left the admissible region (positivity of the exponent
    /// polynomial, sign constraints on the extreme coefficients).
    #[error("dual vector outside admissible region: {0}")]
    DomainViolation(String),

    /// Adaptive quadrature ran out of panels before reaching tolerance.
    #[error("quadrature failed: {0}")]
    QuadratureFailure(String),

    /// Damped Newton exhausted its iteration budget.
    #[error("no convergence after {iterations} iterations (best residual {residual:.3e})")]
    NoConvergence { iterations: usize, residual: f64 },

    /// A covariance/Gram matrix was not numerically positive definite.
    #[error("covariance matrix is not positive definite")]
    SingularCovariance,

    /// The truncated series' certified tail bound exceeded tolerance.
    #[error("series tail bound {bound:.3e} exceeds tolerance {tol:.3e}")]
    TailBoundFailure { bound: f64, tol: f64 },

    /// Lattice enumeration was asked for a degree beyond the configured cap.
    #[error("degree {degree} exceeds enumeration cap {cap}")]
    DegreeCapExceeded { degree: u32, cap: u32 },

    /// A residue-box density scan would visit more points than allowed.
    #[error("box scan of {points} lattice points exceeds cap {cap}")]
    BoxCapExceeded { points: u128, cap: u128 },

    /// The counting DP grew past its state cap.
    #[error("count table reached {states} states, exceeding cap {cap}")]
    MemoryCapExceeded { states: usize, cap: usize },

    /// Exhaustive partition listing grew past its cap.
    #[error("enumeration exceeded cap of {cap} partitions")]
    EnumerationCapExceeded { cap: usize },

    /// Rejection sampling gave up before hitting the target profile.
    #[error("no exact-profile sample after {tries} tries")]
    MaxTriesExceeded { tries: u64 },

    /// Shape-distance window not covered by both curves' grids.
    #[error("window [{lo}, {hi}] not covered by both shape curves")]
    WindowUncovered { lo: f64, hi: f64 },

    /// Command-line usage problem (bad flag combination, unparsable list, ...).
    #[error("{0}")]
    Usage(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
