//! Shared numerical kernels: stable exponential-segment integrals, special
//! functions, small dense linear algebra, and adaptive quadrature over
//! intervals, boxes, simplices, and balls.

pub mod expseg;
pub mod linalg;
pub mod quad;
pub mod special;

/// An integral estimate together with an error bound.
///
/// For Monte Carlo results the error is three standard errors (the crate-wide
/// convention for stochastic assertions); for quadrature it is the accumulated
/// refinement estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub value: f64,
    pub error: f64,
}

impl Estimate {
    pub fn exact(value: f64) -> Self {
        Estimate { value, error: 0.0 }
    }

    /// Lower end of the error interval, clamped below at `floor`.
    pub fn lower(&self, floor: f64) -> f64 {
        (self.value - self.error).max(floor)
    }

    pub fn upper(&self) -> f64 {
        self.value + self.error
    }
}

/// Numerically stable log(sum(exp(x_i))).
pub fn log_sum_exp(xs: &[f64]) -> f64 {
    let m = xs.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    if !m.is_finite() {
        return m;
    }
    let s: f64 = xs.iter().map(|&x| (x - m).exp()).sum();
    m + s.ln()
}
