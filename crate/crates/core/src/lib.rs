//! Log-concave probability distributions as a nearly parametric family.
//!
//! A density `f = exp(φ)` with concave `φ` is surprisingly rigid: weak
//! convergence within the family forces total-variation convergence,
//! convergence of all moments, and pointwise convergence of Laplace
//! transforms. This crate makes that rigidity executable:
//!
//! - [`density`] — exact 1-D piecewise log-linear densities (closed-form
//!   CDF, moments, sampling), min-of-affine polyhedral log-densities in
//!   dimensions 2 and 3, and coordinate-product densities.
//! - [`simplex`] — simplices, barycentric coordinates, corner and replaced
//!   simplices, uniform simplex sampling, and ball/polytope predicates.
//! - [`bounds`] — certified inequality checks with explicit margins: the
//!   product/ratio bounds, the sandwich bound, the `H`-envelope, corner
//!   simplex log-bounds, the three-ball bound, and exponential tail
//!   constants.
//! - [`univariate`] — hazard monotonicity and the second-moment density
//!   bound with its log-linear equality witnesses.
//! - [`convergence`] — L1 / weighted-L1 / sup distances, moment-generating
//!   function domains, decay certificates, and convergence reports with
//!   divergence witnesses.
//! - [`confidence`] — Kolmogorov–Smirnov distance, the Massart radius, and
//!   nonparametric confidence intervals for polynomial moments obtained by
//!   extremizing over log-concave densities inside the KS ball.
//!
//! All randomness is seed-driven (ChaCha8); every operation is pure and
//! deterministic given its inputs.

pub mod bounds;
pub mod confidence;
pub mod convergence;
pub mod density;
mod error;
pub mod numerics;
pub mod rng;
pub mod simplex;
pub mod univariate;

pub use error::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Default tolerances used across the crate. Overridable per call site.
#[derive(Debug, Clone, Copy)]
pub struct Tolerances {
    /// 1-D normalization residual (closed-form arithmetic).
    pub norm_1d: f64,
    /// Quadrature target for d >= 2 normalization and probabilities.
    pub quadrature: f64,
    /// Slack when deciding whether a certified margin passes.
    pub margin: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            norm_1d: 1e-10,
            quadrature: 1e-6,
            margin: 1e-9,
        }
    }
}
