//! Density representations and the unified [`Density`] handle used by the
//! geometry and inequality machinery.

pub mod catalog;
pub mod io;
pub mod piecewise;
pub mod polyhedral;
pub mod polynomial;
pub mod product;

pub use piecewise::PiecewiseLogLinearDensity;
pub use polyhedral::{Domain, PolyhedralLogDensity};
pub use polynomial::Polynomial;
pub use product::ProductDensity;

use crate::numerics::{quad, Estimate};
use crate::{Error, Result};

/// A normalized log-concave density in dimension 1–3.
#[derive(Debug, Clone)]
pub enum Density {
    Piecewise(PiecewiseLogLinearDensity),
    Polyhedral(PolyhedralLogDensity),
    Product(ProductDensity),
}

impl From<PiecewiseLogLinearDensity> for Density {
    fn from(d: PiecewiseLogLinearDensity) -> Self {
        Density::Piecewise(d)
    }
}

impl From<ProductDensity> for Density {
    fn from(d: ProductDensity) -> Self {
        Density::Product(d)
    }
}

impl From<PolyhedralLogDensity> for Density {
    fn from(d: PolyhedralLogDensity) -> Self {
        Density::Polyhedral(d)
    }
}

impl Density {
    pub fn dim(&self) -> usize {
        match self {
            Density::Piecewise(_) => 1,
            Density::Polyhedral(p) => p.dim(),
            Density::Product(p) => p.dim(),
        }
    }

    /// Normalized log-density φ(x) − log Z; −∞ outside the support.
    pub fn log_density(&self, x: &[f64]) -> Result<f64> {
        if x.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: x.len(),
            });
        }
        Ok(self.log_density_unchecked(x))
    }

    pub fn log_density_unchecked(&self, x: &[f64]) -> f64 {
        match self {
            Density::Piecewise(p) => p.log_density(x[0]),
            Density::Polyhedral(p) => p.log_density(x),
            Density::Product(p) => p.log_density(x),
        }
    }

    pub fn density_unchecked(&self, x: &[f64]) -> f64 {
        self.log_density_unchecked(x).exp()
    }

    pub fn density(&self, x: &[f64]) -> Result<f64> {
        Ok(self.log_density(x)?.exp())
    }

    /// Draw n points, deterministic given the seed.
    pub fn sample(&self, seed: u64, n: usize) -> Result<Vec<Vec<f64>>> {
        if n == 0 {
            return Err(Error::InvalidParameter("sample size must be >= 1".into()));
        }
        match self {
            Density::Piecewise(p) => Ok(p.sample(seed, n).into_iter().map(|x| vec![x]).collect()),
            Density::Polyhedral(p) => p.sample(seed, n),
            Density::Product(p) => Ok(p.sample(seed, n)),
        }
    }

    /// ∫ e^{θᵀx} Π(x) f(x) dx with an error bound; exact (zero error) for
    /// piecewise and product representations, quadrature for polyhedral.
    /// θ outside the moment domain is a distinct `Diverges` error.
    pub fn moment(&self, poly: &Polynomial, theta: &[f64]) -> Result<Estimate> {
        if poly.dim() != self.dim() || theta.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: poly.dim().max(theta.len()),
            });
        }
        match self {
            Density::Piecewise(p) => {
                let mut total = 0.0;
                for (c, expo) in poly.terms() {
                    total += c * p.moment_power(expo[0], theta[0])?;
                }
                Ok(Estimate::exact(total))
            }
            Density::Product(p) => Ok(Estimate::exact(p.moment(poly, theta)?)),
            Density::Polyhedral(p) => {
                // bounded domain: finite for every θ
                let (lo, hi) = p.bbox();
                let g = |x: &[f64]| {
                    let ld = p.log_density(x);
                    if ld == f64::NEG_INFINITY {
                        0.0
                    } else {
                        let tilt: f64 = theta.iter().zip(x).map(|(t, xi)| t * xi).sum();
                        poly.eval(x) * (ld + tilt).exp()
                    }
                };
                Ok(quad::integrate_box(&g, lo, hi, 1e-8, 40_000))
            }
        }
    }

    /// An approximate mode (exact knot argmax for piecewise/product).
    pub fn approx_mode(&self) -> Vec<f64> {
        match self {
            Density::Piecewise(p) => vec![p.mode()],
            Density::Polyhedral(p) => p.mode().to_vec(),
            Density::Product(p) => p.mode(),
        }
    }

    /// A characteristic length for the density (used to seed simplex sizes).
    pub fn scale_hint(&self) -> f64 {
        match self {
            Density::Piecewise(p) => p.variance().sqrt().max(1e-6),
            Density::Product(p) => {
                let s: f64 = p
                    .factors()
                    .iter()
                    .map(|f| f.variance().sqrt())
                    .sum::<f64>()
                    / p.dim() as f64;
                s.max(1e-6)
            }
            Density::Polyhedral(p) => {
                let (lo, hi) = p.bbox();
                let w: f64 = lo.iter().zip(hi).map(|(&l, &h)| h - l).sum::<f64>()
                    / (6.0 * p.dim() as f64);
                w.max(1e-6)
            }
        }
    }

    /// Shift the density by the offset (the density of X + offset).
    pub fn shift(&self, offset: &[f64]) -> Result<Density> {
        if offset.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: offset.len(),
            });
        }
        match self {
            Density::Piecewise(p) => Ok(Density::Piecewise(p.shift(offset[0]))),
            Density::Product(p) => Ok(Density::Product(p.shift(offset)?)),
            Density::Polyhedral(_) => Err(Error::InvalidParameter(
                "shifting polyhedral densities is not supported; shift the domain instead".into(),
            )),
        }
    }

    /// An effective bounding box (tail mass ~1e−12 per side off the ends).
    pub fn effective_bbox(&self) -> (Vec<f64>, Vec<f64>) {
        match self {
            Density::Piecewise(p) => {
                let lo = p.quantile(1e-13).unwrap_or(p.knots()[0]);
                let hi = p.quantile(1.0 - 1e-13).unwrap_or(*p.knots().last().unwrap());
                (vec![lo], vec![hi])
            }
            Density::Product(p) => p.quantile_box(1e-13),
            Density::Polyhedral(p) => {
                let (lo, hi) = p.bbox();
                (lo.to_vec(), hi.to_vec())
            }
        }
    }

    /// Lipschitz constant of φ over the effective support (for rigorous
    /// grid-gap inflation). Piecewise: largest finite slope magnitude.
    pub fn log_lipschitz(&self) -> f64 {
        match self {
            Density::Piecewise(p) => {
                let k = p.knots();
                let v = p.logvals_normalized();
                let mut m: f64 = 0.0;
                for i in 0..k.len() - 1 {
                    m = m.max(((v[i + 1] - v[i]) / (k[i + 1] - k[i])).abs());
                }
                if p.left_tail_slope().is_finite() {
                    m = m.max(p.left_tail_slope());
                }
                if p.right_tail_slope().is_finite() {
                    m = m.max(-p.right_tail_slope());
                }
                m
            }
            Density::Product(p) => p.log_lipschitz(),
            Density::Polyhedral(p) => p.log_lipschitz(),
        }
    }

    pub fn as_piecewise(&self) -> Option<&PiecewiseLogLinearDensity> {
        match self {
            Density::Piecewise(p) => Some(p),
            _ => None,
        }
    }
}
