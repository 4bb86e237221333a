//! Analytic fixtures: the standard log-concave families, shipped as exactly
//! normalized piecewise log-linear representations.
//!
//! Uniform, exponential and Laplace are exact; Gaussian, gamma (shape ≥ 1)
//! and beta (both parameters ≥ 1) are fine piecewise approximations that are
//! themselves genuinely log-concave densities, so every inequality check run
//! against them is exact for the represented density.

use super::piecewise::PiecewiseLogLinearDensity;
use super::product::ProductDensity;
use crate::{Error, Result};
use std::collections::BTreeMap;

pub fn uniform(a: f64, b: f64) -> PiecewiseLogLinearDensity {
    assert!(b > a, "uniform requires a < b");
    let c = -(b - a).ln();
    PiecewiseLogLinearDensity::new(vec![a, b], vec![c, c], f64::INFINITY, f64::NEG_INFINITY)
        .expect("uniform is log-concave")
}

pub fn exponential(rate: f64) -> PiecewiseLogLinearDensity {
    assert!(rate > 0.0, "exponential requires rate > 0");
    PiecewiseLogLinearDensity::new(vec![0.0], vec![rate.ln()], f64::INFINITY, -rate)
        .expect("exponential is log-concave")
}

pub fn laplace(mu: f64, b: f64) -> PiecewiseLogLinearDensity {
    assert!(b > 0.0, "laplace requires b > 0");
    PiecewiseLogLinearDensity::new(vec![mu], vec![-(2.0 * b).ln()], 1.0 / b, -1.0 / b)
        .expect("laplace is log-concave")
}

/// Fine piecewise approximation of N(mu, sigma²): `n_knots` knots on
/// mu ± 8 sigma, tangent tail slopes.
pub fn gaussian_with(mu: f64, sigma: f64, n_knots: usize) -> PiecewiseLogLinearDensity {
    assert!(sigma > 0.0 && n_knots >= 3);
    let w = 8.0;
    let knots: Vec<f64> = (0..n_knots)
        .map(|i| mu - w * sigma + 2.0 * w * sigma * i as f64 / (n_knots - 1) as f64)
        .collect();
    let logvals: Vec<f64> = knots
        .iter()
        .map(|x| {
            let z = (x - mu) / sigma;
            -0.5 * z * z
        })
        .collect();
    PiecewiseLogLinearDensity::new(knots, logvals, w / sigma, -w / sigma)
        .expect("discretized Gaussian is log-concave")
}

pub fn gaussian(mu: f64, sigma: f64) -> PiecewiseLogLinearDensity {
    gaussian_with(mu, sigma, 801)
}

/// Gamma with shape k ≥ 1 and the given rate, truncated at a 1e−12-mass
/// left point when k > 1 (the log-density diverges at zero there).
pub fn gamma(shape: f64, rate: f64) -> PiecewiseLogLinearDensity {
    assert!(shape >= 1.0 && rate > 0.0, "gamma requires shape >= 1, rate > 0");
    if (shape - 1.0).abs() < 1e-12 {
        return exponential(rate);
    }
    // mass below t is ~ (rate t)^k / Γ(k+1): pick t_min for ~1e−12 of it
    let ln_gamma_k1 = crate::numerics::special::ln_gamma(shape + 1.0);
    let t_min = ((-12.0 * std::f64::consts::LN_10 + ln_gamma_k1) / shape).exp() / rate;
    let t_max = (shape + 40.0 * shape.sqrt()) / rate;
    let ratio = 1.02_f64;
    let mut knots = Vec::new();
    let mut t = t_min;
    while t < t_max {
        knots.push(t);
        t *= ratio;
    }
    knots.push(t_max);
    let logvals: Vec<f64> = knots
        .iter()
        .map(|x| (shape - 1.0) * x.ln() - rate * x)
        .collect();
    let right_slope = (shape - 1.0) / t_max - rate;
    debug_assert!(right_slope < 0.0);
    PiecewiseLogLinearDensity::new(knots, logvals, f64::INFINITY, right_slope)
        .expect("gamma(k >= 1) is log-concave")
}

/// Beta with both parameters ≥ 1 on [0, 1], truncated at 1e−9-scale points
/// where the log-density diverges.
pub fn beta(alpha: f64, beta: f64) -> PiecewiseLogLinearDensity {
    assert!(alpha >= 1.0 && beta >= 1.0, "beta requires both parameters >= 1");
    if (alpha - 1.0).abs() < 1e-12 && (beta - 1.0).abs() < 1e-12 {
        return uniform(0.0, 1.0);
    }
    let eps_l: f64 = if alpha > 1.0 { 1e-9 } else { 0.0 };
    let eps_r: f64 = if beta > 1.0 { 1e-9 } else { 0.0 };
    let mut knots: Vec<f64> = Vec::new();
    // log-spaced into both corners, linear in the middle
    let mut t = eps_l.max(1e-9);
    if eps_l > 0.0 {
        while t < 0.1 {
            knots.push(t);
            t *= 1.05;
        }
    } else {
        knots.push(0.0);
    }
    let mid_start = knots.last().copied().unwrap_or(0.0).max(0.1);
    let n_mid = 241;
    for i in 0..n_mid {
        let x = mid_start + (0.9 - mid_start) * i as f64 / (n_mid - 1) as f64;
        knots.push(x);
    }
    if eps_r > 0.0 {
        let mut u = 0.1_f64; // distance from 1
        while u > eps_r {
            u /= 1.05;
            knots.push(1.0 - u);
        }
        knots.push(1.0 - eps_r);
    } else {
        knots.push(1.0);
    }
    knots.sort_by(|a, b| a.partial_cmp(b).unwrap());
    knots.dedup_by(|a, b| (*a - *b).abs() < 1e-15);
    let logvals: Vec<f64> = knots
        .iter()
        .map(|&x| {
            let lx = if x > 0.0 { x.ln() } else { 0.0 };
            let l1x = if x < 1.0 { (1.0 - x).ln() } else { 0.0 };
            (alpha - 1.0) * lx + (beta - 1.0) * l1x
        })
        .collect();
    PiecewiseLogLinearDensity::new(knots, logvals, f64::INFINITY, f64::NEG_INFINITY)
        .expect("beta(a,b >= 1) is log-concave")
}

/// The six canonical fixtures used throughout the test batteries.
pub fn standard_six() -> Vec<(&'static str, PiecewiseLogLinearDensity)> {
    vec![
        ("uniform(0,1)", uniform(0.0, 1.0)),
        ("exponential(1)", exponential(1.0)),
        ("laplace(0,1)", laplace(0.0, 1.0)),
        ("gaussian(0,1)", gaussian(0.0, 1.0)),
        ("gamma(2,1)", gamma(2.0, 1.0)),
        ("beta(2,2)", beta(2.0, 2.0)),
    ]
}

/// Two-dimensional lifts of the six fixtures: products of independent
/// coordinates (log-concave, exactly normalized, moments in closed form).
pub fn standard_six_2d() -> Vec<(&'static str, ProductDensity)> {
    let g = |mu, sigma| gaussian_with(mu, sigma, 401);
    vec![
        (
            "uniform(0,1)^2",
            ProductDensity::new(vec![uniform(0.0, 1.0), uniform(0.0, 1.0)]).unwrap(),
        ),
        (
            "exponential(1)^2",
            ProductDensity::new(vec![exponential(1.0), exponential(1.0)]).unwrap(),
        ),
        (
            "laplace(0,1)^2",
            ProductDensity::new(vec![laplace(0.0, 1.0), laplace(0.0, 1.0)]).unwrap(),
        ),
        (
            "gaussian(0,1)^2",
            ProductDensity::new(vec![g(0.0, 1.0), g(0.0, 1.0)]).unwrap(),
        ),
        (
            "gamma(2,1)^2",
            ProductDensity::new(vec![gamma(2.0, 1.0), gamma(2.0, 1.0)]).unwrap(),
        ),
        (
            "beta(2,2)^2",
            ProductDensity::new(vec![beta(2.0, 2.0), beta(2.0, 2.0)]).unwrap(),
        ),
    ]
}

fn get(params: &BTreeMap<String, f64>, key: &str, default: f64) -> f64 {
    params.get(key).copied().unwrap_or(default)
}

/// Look up a catalog entry by name with named parameters.
pub fn by_name(name: &str, params: &BTreeMap<String, f64>) -> Result<PiecewiseLogLinearDensity> {
    match name {
        "uniform" => {
            let a = get(params, "a", 0.0);
            let b = get(params, "b", 1.0);
            if b <= a {
                return Err(Error::Spec(format!("uniform requires a < b, got {a}, {b}")));
            }
            Ok(uniform(a, b))
        }
        "exponential" => {
            let rate = get(params, "rate", 1.0);
            if rate <= 0.0 {
                return Err(Error::Spec(format!("exponential requires rate > 0, got {rate}")));
            }
            Ok(exponential(rate))
        }
        "laplace" => {
            let mu = get(params, "mu", 0.0);
            let b = get(params, "b", 1.0);
            if b <= 0.0 {
                return Err(Error::Spec(format!("laplace requires b > 0, got {b}")));
            }
            Ok(laplace(mu, b))
        }
        "gaussian" | "normal" => {
            let mu = get(params, "mu", 0.0);
            let sigma = get(params, "sigma", 1.0);
            if sigma <= 0.0 {
                return Err(Error::Spec(format!("gaussian requires sigma > 0, got {sigma}")));
            }
            Ok(gaussian(mu, sigma))
        }
        "gamma" => {
            let shape = get(params, "shape", 2.0);
            let rate = get(params, "rate", 1.0);
            if shape < 1.0 || rate <= 0.0 {
                return Err(Error::Spec(format!(
                    "gamma requires shape >= 1 and rate > 0, got {shape}, {rate}"
                )));
            }
            Ok(gamma(shape, rate))
        }
        "beta" => {
            let a = get(params, "alpha", 2.0);
            let b = get(params, "beta", 2.0);
            if a < 1.0 || b < 1.0 {
                return Err(Error::Spec(format!(
                    "beta requires both parameters >= 1, got {a}, {b}"
                )));
            }
            Ok(beta(a, b))
        }
        other => Err(Error::Spec(format!("unknown catalog density {other:?}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_is_normalized() {
        for (name, d) in standard_six() {
            assert!(d.normalization_defect() < 1e-12, "{name}");
            assert!(d.verify_concavity().is_ok(), "{name}");
        }
    }

    #[test]
    fn gamma_and_beta_match_analytic_moments() {
        let g = gamma(2.0, 1.0);
        assert!((g.mean() - 2.0).abs() < 1e-4, "gamma mean {}", g.mean());
        assert!((g.variance() - 2.0).abs() < 1e-3, "gamma var {}", g.variance());
        let b = beta(2.0, 2.0);
        assert!((b.mean() - 0.5).abs() < 1e-6, "beta mean {}", b.mean());
        assert!((b.variance() - 0.05).abs() < 1e-4, "beta var {}", b.variance());
    }

    #[test]
    fn gaussian_moments_close() {
        let g = gaussian(0.0, 1.0);
        assert!(g.mean().abs() < 1e-12); // symmetric grid
        assert!((g.variance() - 1.0).abs() < 1e-4);
        let x2 = g.moment_power(2, 0.0).unwrap();
        assert!((x2 - 1.0).abs() < 1e-3);
    }

    #[test]
    fn by_name_round_trip() {
        let mut p = BTreeMap::new();
        p.insert("mu".to_string(), 1.0);
        p.insert("b".to_string(), 2.0);
        let d = by_name("laplace", &p).unwrap();
        assert!((d.mean() - 1.0).abs() < 1e-12);
        assert!(by_name("cauchy", &BTreeMap::new()).is_err());
    }
}
