//! Exact 1-D log-concave densities: piecewise linear log-density between
//! knots, exponential tails (or truncation), closed-form normalization,
//! CDF, quantiles, and polynomial/tilted moments.
//!
//! The log-density is stored un-normalized together with `log_norm`
//! (= log ∫ e^φ), so the represented density is `exp(φ(x) − log_norm)`.
//! Every operation below is closed form; nothing is sampled or quadratured.

use crate::numerics::expseg::{
    left_tail_poly_exp, log_segment_exp, right_tail_poly_exp, segment_exp, segment_poly_exp,
};
use crate::numerics::log_sum_exp;
use crate::rng;
use crate::{Error, Result};
use rand::Rng;

/// Piecewise log-linear density on the real line.
///
/// Knots `t_0 < … < t_m` carry concave log-values; the left tail has slope
/// `left_tail_slope ∈ (0, +∞]` (`+∞` truncates the support at `t_0`), the
/// right tail slope lies in `[−∞, 0)`.
#[derive(Debug, Clone)]
pub struct PiecewiseLogLinearDensity {
    knots: Vec<f64>,
    logvals: Vec<f64>,
    left_tail_slope: f64,
    right_tail_slope: f64,
    log_norm: f64,
    /// F(t_i) for each knot, cached.
    cum_mass: Vec<f64>,
}

/// Relative slack used when validating chord-slope monotonicity.
const CONCAVITY_SLACK: f64 = 1e-9;

impl PiecewiseLogLinearDensity {
    /// Build and normalize, validating concavity and integrability.
    pub fn new(
        knots: Vec<f64>,
        logvals: Vec<f64>,
        left_tail_slope: f64,
        right_tail_slope: f64,
    ) -> Result<Self> {
        let d = Self::build(knots, logvals, left_tail_slope, right_tail_slope)?;
        d.verify_concavity()?;
        Ok(d)
    }

    /// Build without the concavity check. Intended for negative controls;
    /// everything else (normalization, CDF, moments) still works.
    pub fn new_unchecked(
        knots: Vec<f64>,
        logvals: Vec<f64>,
        left_tail_slope: f64,
        right_tail_slope: f64,
    ) -> Result<Self> {
        Self::build(knots, logvals, left_tail_slope, right_tail_slope)
    }

    fn build(
        knots: Vec<f64>,
        logvals: Vec<f64>,
        left_tail_slope: f64,
        right_tail_slope: f64,
    ) -> Result<Self> {
        if knots.is_empty() || knots.len() != logvals.len() {
            return Err(Error::InvalidParameter(format!(
                "need matching nonempty knots/logvals, got {}/{}",
                knots.len(),
                logvals.len()
            )));
        }
        if knots.iter().any(|x| !x.is_finite()) || logvals.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidParameter(
                "knots and logvals must be finite".into(),
            ));
        }
        for w in knots.windows(2) {
            if w[1] <= w[0] {
                return Err(Error::InvalidParameter(format!(
                    "knots must be strictly increasing ({} then {})",
                    w[0], w[1]
                )));
            }
        }
        if !(left_tail_slope > 0.0) {
            return Err(Error::NonIntegrableTails(format!(
                "left tail slope must be positive or +inf, got {left_tail_slope}"
            )));
        }
        if !(right_tail_slope < 0.0) {
            return Err(Error::NonIntegrableTails(format!(
                "right tail slope must be negative or -inf, got {right_tail_slope}"
            )));
        }
        if knots.len() == 1 && left_tail_slope.is_infinite() && right_tail_slope.is_infinite() {
            return Err(Error::InvalidParameter(
                "support would have zero length (single knot, both tails truncated)".into(),
            ));
        }

        let mut d = PiecewiseLogLinearDensity {
            knots,
            logvals,
            left_tail_slope,
            right_tail_slope,
            log_norm: 0.0,
            cum_mass: Vec::new(),
        };
        d.normalize_exact();
        Ok(d)
    }

    /// Recompute `log_norm` and the cached CDF values at the knots.
    fn normalize_exact(&mut self) {
        let m = self.knots.len() - 1;
        let mut log_pieces: Vec<f64> = Vec::with_capacity(m + 2);
        // left tail
        log_pieces.push(if self.left_tail_slope.is_finite() {
            self.logvals[0] - self.left_tail_slope.ln()
        } else {
            f64::NEG_INFINITY
        });
        for i in 0..m {
            log_pieces.push(log_segment_exp(
                self.logvals[i],
                self.logvals[i + 1],
                self.knots[i + 1] - self.knots[i],
            ));
        }
        log_pieces.push(if self.right_tail_slope.is_finite() {
            self.logvals[m] - (-self.right_tail_slope).ln()
        } else {
            f64::NEG_INFINITY
        });
        self.log_norm = log_sum_exp(&log_pieces);

        let mut cum = Vec::with_capacity(m + 1);
        let mut acc = (log_pieces[0] - self.log_norm).exp();
        cum.push(acc);
        for lp in log_pieces.iter().take(m + 1).skip(1) {
            acc += (lp - self.log_norm).exp();
            cum.push(acc.min(1.0));
        }
        self.cum_mass = cum;
    }

    /// Chord slopes must be non-increasing and bracketed by the tail slopes.
    pub fn verify_concavity(&self) -> Result<()> {
        let mut prev = self.left_tail_slope;
        for i in 0..self.knots.len() - 1 {
            let s = (self.logvals[i + 1] - self.logvals[i]) / (self.knots[i + 1] - self.knots[i]);
            let slack = CONCAVITY_SLACK * (1.0 + s.abs() + if prev.is_finite() { prev.abs() } else { 0.0 });
            if prev.is_finite() && s > prev + slack {
                return Err(Error::NotConcave(format!(
                    "chord slope {s:.12} after {prev:.12} at knot {}",
                    self.knots[i]
                )));
            }
            prev = s;
        }
        if self.right_tail_slope.is_finite()
            && prev.is_finite()
            && self.right_tail_slope > prev + CONCAVITY_SLACK * (1.0 + prev.abs())
        {
            return Err(Error::NotConcave(format!(
                "right tail slope {} exceeds last chord slope {prev}",
                self.right_tail_slope
            )));
        }
        Ok(())
    }

    pub fn knots(&self) -> &[f64] {
        &self.knots
    }

    /// φ(t_i) − log_norm at each knot.
    pub fn logvals_normalized(&self) -> Vec<f64> {
        self.logvals.iter().map(|v| v - self.log_norm).collect()
    }

    pub fn left_tail_slope(&self) -> f64 {
        self.left_tail_slope
    }

    pub fn right_tail_slope(&self) -> f64 {
        self.right_tail_slope
    }

    /// log ∫ e^φ of the stored (un-normalized) log-values.
    pub fn log_norm(&self) -> f64 {
        self.log_norm
    }

    /// (inf{f > 0}, sup{f > 0}); infinite for exponential tails.
    pub fn support(&self) -> (f64, f64) {
        let lo = if self.left_tail_slope.is_finite() {
            f64::NEG_INFINITY
        } else {
            self.knots[0]
        };
        let hi = if self.right_tail_slope.is_finite() {
            f64::INFINITY
        } else {
            *self.knots.last().unwrap()
        };
        (lo, hi)
    }

    /// Normalized log-density. −∞ outside the support; at a truncated
    /// boundary the one-sided limit is taken (upper semicontinuous).
    pub fn log_density(&self, x: f64) -> f64 {
        let m = self.knots.len() - 1;
        let raw = if x < self.knots[0] {
            if self.left_tail_slope.is_finite() {
                self.logvals[0] + self.left_tail_slope * (x - self.knots[0])
            } else {
                return f64::NEG_INFINITY;
            }
        } else if x > self.knots[m] {
            if self.right_tail_slope.is_finite() {
                self.logvals[m] + self.right_tail_slope * (x - self.knots[m])
            } else {
                return f64::NEG_INFINITY;
            }
        } else {
            let i = self.segment_index(x);
            if self.knots[i + 1] == self.knots[i] {
                self.logvals[i]
            } else {
                let w = (x - self.knots[i]) / (self.knots[i + 1] - self.knots[i]);
                self.logvals[i] + w * (self.logvals[i + 1] - self.logvals[i])
            }
        };
        raw - self.log_norm
    }

    pub fn density(&self, x: f64) -> f64 {
        self.log_density(x).exp()
    }

    /// Largest i with knots[i] <= x, clamped to a valid segment start.
    fn segment_index(&self, x: f64) -> usize {
        match self
            .knots
            .binary_search_by(|k| k.partial_cmp(&x).unwrap())
        {
            Ok(i) => i.min(self.knots.len() - 2),
            Err(0) => 0,
            Err(i) => (i - 1).min(self.knots.len() - 2),
        }
    }

    /// The (normalized log-value at x, slope) of the piece containing x.
    /// Outside the support this is (−∞, 0).
    pub fn piece_at(&self, x: f64) -> (f64, f64) {
        let m = self.knots.len() - 1;
        if x < self.knots[0] {
            if self.left_tail_slope.is_finite() {
                (self.log_density(x), self.left_tail_slope)
            } else {
                (f64::NEG_INFINITY, 0.0)
            }
        } else if x >= self.knots[m] {
            if self.right_tail_slope.is_finite() {
                (self.log_density(x), self.right_tail_slope)
            } else if x == self.knots[m] {
                (self.log_density(x), 0.0)
            } else {
                (f64::NEG_INFINITY, 0.0)
            }
        } else {
            let i = self.segment_index(x);
            let s = (self.logvals[i + 1] - self.logvals[i]) / (self.knots[i + 1] - self.knots[i]);
            (self.log_density(x), s)
        }
    }

    /// Exact cumulative distribution function.
    pub fn cdf(&self, x: f64) -> f64 {
        let m = self.knots.len() - 1;
        if x <= self.knots[0] {
            if self.left_tail_slope.is_finite() {
                let f_t0 = self.cum_mass[0];
                (f_t0 * (self.left_tail_slope * (x - self.knots[0])).exp()).min(1.0)
            } else if x < self.knots[0] {
                0.0
            } else {
                0.0
            }
        } else if x >= self.knots[m] {
            if self.right_tail_slope.is_finite() {
                let tail = 1.0 - self.cum_mass[m];
                (1.0 - tail * (self.right_tail_slope * (x - self.knots[m])).exp()).clamp(0.0, 1.0)
            } else {
                1.0
            }
        } else {
            let i = self.segment_index(x);
            let s = (self.logvals[i + 1] - self.logvals[i]) / (self.knots[i + 1] - self.knots[i]);
            let partial = segment_exp(
                self.knots[i],
                x,
                self.logvals[i] - self.log_norm,
                s,
            );
            (self.cum_mass[i] + partial).clamp(0.0, 1.0)
        }
    }

    /// Exact quantile function on (0, 1).
    pub fn quantile(&self, p: f64) -> Result<f64> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::InvalidParameter(format!(
                "quantile level must be in [0,1], got {p}"
            )));
        }
        let m = self.knots.len() - 1;
        if p == 0.0 {
            return Ok(self.support().0);
        }
        if p == 1.0 {
            return Ok(self.support().1);
        }
        if p <= self.cum_mass[0] {
            // left tail (only reachable when the tail carries mass)
            let f_t0 = self.cum_mass[0];
            if !self.left_tail_slope.is_finite() || f_t0 == 0.0 {
                return Ok(self.knots[0]);
            }
            return Ok(self.knots[0] + (p / f_t0).ln() / self.left_tail_slope);
        }
        if p >= self.cum_mass[m] {
            let tail = 1.0 - self.cum_mass[m];
            if !self.right_tail_slope.is_finite() || tail == 0.0 {
                return Ok(self.knots[m]);
            }
            return Ok(self.knots[m] + ((1.0 - p) / tail).ln() / self.right_tail_slope);
        }
        // binary search for the segment
        let mut lo = 0;
        let mut hi = m;
        while hi - lo > 1 {
            let mid = (lo + hi) / 2;
            if self.cum_mass[mid] < p {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let i = lo;
        let q = p - self.cum_mass[i];
        let s = (self.logvals[i + 1] - self.logvals[i]) / (self.knots[i + 1] - self.knots[i]);
        let u = self.logvals[i] - self.log_norm;
        let x = if s.abs() < 1e-14 {
            self.knots[i] + q * (-u).exp()
        } else {
            self.knots[i] + (q * s * (-u).exp()).ln_1p() / s
        };
        Ok(x.clamp(self.knots[i], self.knots[i + 1]))
    }

    /// Exact inverse-CDF sampling, deterministic given the seed.
    pub fn sample(&self, seed: u64, n: usize) -> Vec<f64> {
        let mut r = rng::stream(seed, "piecewise-sample");
        (0..n)
            .map(|_| {
                let mut u: f64 = r.gen();
                while u <= 0.0 {
                    u = r.gen();
                }
                self.quantile(u).expect("u in (0,1)")
            })
            .collect()
    }

    fn theta_in_domain(&self, theta: f64) -> bool {
        let left_ok = !self.left_tail_slope.is_finite() || theta > -self.left_tail_slope;
        let right_ok = !self.right_tail_slope.is_finite() || theta < -self.right_tail_slope;
        left_ok && right_ok
    }

    /// ∫ x^k e^{θx} f(x) dx, exact; `Err(Diverges)` for θ outside the
    /// moment-generating-function domain.
    pub fn moment_power(&self, k: u32, theta: f64) -> Result<f64> {
        self.moment_power_centered(0.0, k, theta)
    }

    /// ∫ (x−c)^k e^{θx} f(x) dx, exact. Working in centered coordinates
    /// avoids the cancellation of expanding (x−c)^k.
    pub fn moment_power_centered(&self, c: f64, k: u32, theta: f64) -> Result<f64> {
        if !self.theta_in_domain(theta) {
            return Err(Error::Diverges(format!(
                "theta = {theta} outside the MGF domain {:?}",
                self.mgf_domain_bounds()
            )));
        }
        let m = self.knots.len() - 1;
        let mut total = 0.0;
        if self.left_tail_slope.is_finite() {
            let p = self.logvals[0] - self.log_norm + theta * self.knots[0];
            total += left_tail_poly_exp(
                self.knots[0] - c,
                p,
                self.left_tail_slope + theta,
                k,
            );
        }
        for i in 0..m {
            let s = (self.logvals[i + 1] - self.logvals[i]) / (self.knots[i + 1] - self.knots[i]);
            let p = self.logvals[i] - self.log_norm + theta * self.knots[i];
            total += segment_poly_exp(
                self.knots[i] - c,
                self.knots[i + 1] - c,
                p,
                s + theta,
                k,
            );
        }
        if self.right_tail_slope.is_finite() {
            let p = self.logvals[m] - self.log_norm + theta * self.knots[m];
            total += right_tail_poly_exp(
                self.knots[m] - c,
                p,
                self.right_tail_slope + theta,
                k,
            );
        }
        Ok(total)
    }

    /// (−s_L, −s_R): the open interval of θ with finite ∫ e^{θx} f dx.
    /// A truncated side contributes an infinite endpoint.
    pub fn mgf_domain_bounds(&self) -> (f64, f64) {
        let lo = if self.left_tail_slope.is_finite() {
            -self.left_tail_slope
        } else {
            f64::NEG_INFINITY
        };
        let hi = if self.right_tail_slope.is_finite() {
            -self.right_tail_slope
        } else {
            f64::INFINITY
        };
        (lo, hi)
    }

    /// Exact mean.
    pub fn mean(&self) -> f64 {
        self.moment_power(1, 0.0).expect("theta = 0 always finite")
    }

    /// Exact variance via the centered second moment.
    pub fn variance(&self) -> f64 {
        let mu = self.mean();
        self.moment_power_centered(mu, 2, 0.0)
            .expect("theta = 0 always finite")
    }

    /// log ∫_{−R}^{R} e^{θx} f(x) dx for arbitrary θ, computed in log space
    /// so that divergence witnesses never overflow.
    pub fn log_truncated_tilted_mass(&self, theta: f64, r: f64) -> f64 {
        let (a, b) = (-r, r);
        let mut log_pieces: Vec<f64> = Vec::new();
        let mut cuts: Vec<f64> = vec![a];
        for &t in &self.knots {
            if t > a && t < b {
                cuts.push(t);
            }
        }
        cuts.push(b);
        for w in cuts.windows(2) {
            let (lo, hi) = (w[0], w[1]);
            if hi <= lo {
                continue;
            }
            let mid = 0.5 * (lo + hi);
            let (phi_mid, slope) = self.piece_at(mid);
            if phi_mid == f64::NEG_INFINITY {
                continue;
            }
            let u = phi_mid - slope * (mid - lo) + theta * lo;
            let v = phi_mid + slope * (hi - mid) + theta * hi;
            log_pieces.push(log_segment_exp(u, v, hi - lo));
        }
        log_sum_exp(&log_pieces)
    }

    /// Exponential tilt by θ (strictly inside the MGF domain), renormalized.
    pub fn tilt(&self, theta: f64) -> Result<Self> {
        if !self.theta_in_domain(theta) {
            return Err(Error::Diverges(format!(
                "tilt parameter {theta} outside the MGF domain"
            )));
        }
        let logvals = self
            .logvals
            .iter()
            .zip(&self.knots)
            .map(|(v, t)| v + theta * t)
            .collect();
        let left = if self.left_tail_slope.is_finite() {
            self.left_tail_slope + theta
        } else {
            f64::INFINITY
        };
        let right = if self.right_tail_slope.is_finite() {
            self.right_tail_slope + theta
        } else {
            f64::NEG_INFINITY
        };
        Self::build(self.knots.clone(), logvals, left, right)
    }

    /// Translate the density by c.
    pub fn shift(&self, c: f64) -> Self {
        let mut d = self.clone();
        for t in &mut d.knots {
            *t += c;
        }
        d
    }

    /// Rescale: the density of s·X for s > 0.
    pub fn scale(&self, s: f64) -> Result<Self> {
        if !(s > 0.0) || !s.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "scale factor must be positive and finite, got {s}"
            )));
        }
        let knots = self.knots.iter().map(|t| t * s).collect();
        let logvals = self.logvals.iter().map(|v| v - s.ln()).collect();
        let left = if self.left_tail_slope.is_finite() {
            self.left_tail_slope / s
        } else {
            f64::INFINITY
        };
        let right = if self.right_tail_slope.is_finite() {
            self.right_tail_slope / s
        } else {
            f64::NEG_INFINITY
        };
        Self::build(knots, logvals, left, right)
    }

    /// Recomputed |e^{−log_norm} ∫ e^φ − 1|, for invariant checks.
    pub fn normalization_defect(&self) -> f64 {
        let mut copy = self.clone();
        copy.normalize_exact();
        (copy.log_norm - self.log_norm).exp_m1().abs()
    }

    /// Mode of the density (a knot, by concavity).
    pub fn mode(&self) -> f64 {
        let idx = self
            .logvals
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.total_cmp(b.1))
            .map(|(i, _)| i)
            .unwrap();
        self.knots[idx]
    }
}

/// Sorted union of the knot sets of two densities plus any extra cut points,
/// deduplicated. Used by the distance computations.
pub fn union_knots(
    a: &PiecewiseLogLinearDensity,
    b: &PiecewiseLogLinearDensity,
    extra: &[f64],
) -> Vec<f64> {
    let mut all: Vec<f64> = a
        .knots()
        .iter()
        .chain(b.knots().iter())
        .chain(extra.iter())
        .cloned()
        .collect();
    all.sort_by(|x, y| x.partial_cmp(y).unwrap());
    all.dedup_by(|x, y| (*x - *y).abs() <= 1e-14 * (1.0 + x.abs()));
    all
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::density::catalog;

    #[test]
    fn normalize_laplace_kernel_gives_log_two() {
        // φ(x) = −|x| un-normalized: ∫ e^{−|x|} dx = 2
        let d = PiecewiseLogLinearDensity::new(vec![0.0], vec![0.0], 1.0, -1.0).unwrap();
        assert!((d.log_norm() - 2.0_f64.ln()).abs() < 1e-14);
        // and the result is a proper density
        assert!(d.normalization_defect() < 1e-12);
    }

    #[test]
    fn normalize_is_idempotent_for_laplace() {
        let d = catalog::laplace(0.0, 1.0);
        // already normalized: the stored logvals are the normalized ones
        let d2 = PiecewiseLogLinearDensity::new(
            d.knots().to_vec(),
            d.logvals_normalized(),
            d.left_tail_slope(),
            d.right_tail_slope(),
        )
        .unwrap();
        assert!(d2.log_norm().abs() < 1e-12);
    }

    #[test]
    fn gaussian_approx_normalizer_matches_closed_form() {
        // fine piecewise approximation of φ(x) = −x²/2
        let n = 801;
        let knots: Vec<f64> = (0..n).map(|i| -8.0 + 16.0 * i as f64 / (n - 1) as f64).collect();
        let logvals: Vec<f64> = knots.iter().map(|x| -x * x / 2.0).collect();
        let d = PiecewiseLogLinearDensity::new(knots, logvals, 8.0, -8.0).unwrap();
        let expect = 0.5 * (2.0 * std::f64::consts::PI).ln();
        assert!(
            (d.log_norm() - expect).abs() < 1e-3,
            "{} vs {}",
            d.log_norm(),
            expect
        );
    }

    #[test]
    fn cdf_known_values() {
        let lap = catalog::laplace(0.0, 1.0);
        assert!((lap.cdf(0.0) - 0.5).abs() < 1e-14);
        let expo = catalog::exponential(1.0);
        assert!((expo.cdf(1.0) - (1.0 - (-1.0_f64).exp())).abs() < 1e-14);
        assert_eq!(expo.cdf(-1e3), 0.0);
        assert!(lap.cdf(-700.0).abs() < 1e-200);
    }

    #[test]
    fn eval_outside_support() {
        let u = catalog::uniform(0.0, 1.0);
        assert!((u.log_density(0.5) - 0.0).abs() < 1e-14);
        assert_eq!(u.log_density(2.0), f64::NEG_INFINITY);
        // boundary takes the one-sided limit
        assert!((u.density(0.0) - 1.0).abs() < 1e-14);
        assert!((u.density(1.0) - 1.0).abs() < 1e-14);
    }

    #[test]
    fn sampling_is_deterministic_and_in_support() {
        let u = catalog::uniform(0.0, 1.0);
        let s1 = u.sample(42, 10_000);
        let s2 = u.sample(42, 10_000);
        assert_eq!(s1, s2);
        assert!(s1.iter().all(|&x| (0.0..=1.0).contains(&x)));
    }

    #[test]
    fn exponential_sample_mean_close_to_one() {
        let e = catalog::exponential(1.0);
        let n = 100_000;
        let s = e.sample(7, n);
        let mean = s.iter().sum::<f64>() / n as f64;
        // sd of Exp(1) is 1
        assert!(
            (mean - 1.0).abs() <= 3.0 / (n as f64).sqrt(),
            "mean = {mean}"
        );
    }

    #[test]
    fn laplace_mgf_value() {
        // MGF of Laplace(0,1): 1/(1−θ²); at θ = 0.5 → 4/3
        let lap = catalog::laplace(0.0, 1.0);
        let v = lap.moment_power(0, 0.5).unwrap();
        assert!((v - 4.0 / 3.0).abs() < 1e-12, "{v}");
    }

    #[test]
    fn moment_divergence_outside_domain() {
        let lap = catalog::laplace(0.0, 1.0);
        assert!(matches!(
            lap.moment_power(0, 1.0),
            Err(Error::Diverges(_))
        ));
        assert!(lap.moment_power(0, 1.0 - 1e-6).is_ok());
        let expo = catalog::exponential(1.0);
        assert!(expo.moment_power(0, -50.0).is_ok());
        assert!(expo.moment_power(0, 1.0 + 1e-6).is_err());
    }

    #[test]
    fn mass_moment_is_one_for_catalog() {
        for (name, d) in catalog::standard_six() {
            let v = d.moment_power(0, 0.0).unwrap();
            assert!((v - 1.0).abs() < 1e-10, "{name}: mass = {v}");
        }
    }

    #[test]
    fn mean_and_variance_laplace() {
        let lap = catalog::laplace(0.0, 1.0);
        assert!(lap.mean().abs() < 1e-12);
        assert!((lap.variance() - 2.0).abs() < 1e-12);
    }

    #[test]
    fn quantile_cdf_roundtrip() {
        let g = catalog::gamma(2.0, 1.0);
        for &p in &[1e-6, 0.01, 0.3, 0.5, 0.9, 0.999] {
            let x = g.quantile(p).unwrap();
            assert!((g.cdf(x) - p).abs() < 1e-10, "p = {p}");
        }
    }

    #[test]
    fn cdf_derivative_matches_density() {
        for (name, d) in catalog::standard_six() {
            for w in d.knots().windows(2) {
                let mid = 0.5 * (w[0] + w[1]);
                let h = (1e-7 * (1.0 + mid.abs())).min((w[1] - w[0]) / 4.0);
                if h <= 0.0 {
                    continue;
                }
                let deriv = (d.cdf(mid + h) - d.cdf(mid - h)) / (2.0 * h);
                let f = d.density(mid);
                if f < 1e-12 {
                    continue;
                }
                assert!(
                    (deriv - f).abs() <= 1e-6 * (1.0 + f),
                    "{name} at {mid}: {deriv} vs {f}"
                );
            }
        }
    }

    #[test]
    fn tilt_matches_closed_form_exponential() {
        // tilting Exp(1) by θ gives Exp(1−θ)
        let e = catalog::exponential(1.0);
        let t = e.tilt(0.4).unwrap();
        assert!((t.mean() - 1.0 / 0.6).abs() < 1e-12);
    }

    #[test]
    fn rejects_nonconcave_logvals() {
        let r = PiecewiseLogLinearDensity::new(
            vec![0.0, 1.0, 2.0],
            vec![0.0, -1.0, 0.5],
            1.0,
            -1.0,
        );
        assert!(matches!(r, Err(Error::NotConcave(_))));
        // same shape accepted unchecked
        assert!(PiecewiseLogLinearDensity::new_unchecked(
            vec![0.0, 1.0, 2.0],
            vec![0.0, -1.0, 0.5],
            1.0,
            -1.0,
        )
        .is_ok());
    }

    #[test]
    fn concavity_spot_check_random_triples() {
        use rand::Rng;
        let mut r = crate::rng::stream(3, "concavity-triples");
        for (name, d) in catalog::standard_six() {
            let (lo, hi) = d.support();
            let lo = lo.max(d.knots()[0] - 5.0);
            let hi = hi.min(*d.knots().last().unwrap() + 5.0);
            for _ in 0..1000 {
                let mut x = lo + (hi - lo) * r.gen::<f64>();
                let mut z = lo + (hi - lo) * r.gen::<f64>();
                if x > z {
                    std::mem::swap(&mut x, &mut z);
                }
                let lam: f64 = r.gen();
                let y = lam * x + (1.0 - lam) * z;
                let (px, pz, py) = (d.log_density(x), d.log_density(z), d.log_density(y));
                if px == f64::NEG_INFINITY || pz == f64::NEG_INFINITY {
                    continue;
                }
                assert!(
                    py >= lam * px + (1.0 - lam) * pz - 1e-9,
                    "{name}: concavity violated at ({x},{y},{z})"
                );
            }
        }
    }
}
