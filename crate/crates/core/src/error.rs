use thiserror::Error;

/// Errors surfaced by density construction, geometry, integration, and the
/// certified checks.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("log-density is not concave: {0}")]
    NotConcave(String),

    #[error("non-integrable tails: {0}")]
    NonIntegrableTails(String),

    #[error("quadrature failed to reach tolerance {target:.3e}: error estimate {achieved:.3e}")]
    QuadratureFailure { target: f64, achieved: f64 },

    #[error("integral diverges: {0}")]
    Diverges(String),

    #[error("degenerate simplex: |det| = {det:.3e} below threshold")]
    DegenerateSimplex { det: f64 },

    #[error("singular linear system")]
    SingularMatrix,

    #[error("point lies outside the simplex: min barycentric coordinate {min_coord:.3e}")]
    OutsideSimplex { min_coord: f64 },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("tail-constant verification failed: f({at:.6}) = {f_val:.6e} exceeds envelope {env:.6e}")]
    TailVerification { at: f64, f_val: f64, env: f64 },

    #[error("sampling failed: {0}")]
    SamplingFailure(String),

    #[error("no feasible density found inside the KS ball (radius {radius:.6e}); best distance {best:.6e}")]
    NoFeasibleFit { radius: f64, best: f64 },

    #[error("density specification error: {0}")]
    Spec(String),
}
