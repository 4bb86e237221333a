//! Exact integrals of `x^k exp(linear)` over segments, half-lines, and the
//! building blocks of piecewise log-linear arithmetic.
//!
//! Everything here is closed form. The only care required is numerical:
//! `g_j(z) = ∫₀¹ s^j e^{zs} ds` is evaluated by power series for moderate
//! `|z|` (the upward recurrence cancels catastrophically near zero) and by
//! the recurrence `g_j = (e^z − j g_{j−1})/z` for large `|z|`.

/// g_j(z) = ∫₀¹ s^j e^{zs} ds, exact to f64 rounding for j ≤ ~12.
pub fn g_poly_exp(j: u32, z: f64) -> f64 {
    debug_assert!(j <= 16);
    if z.abs() <= 30.0 {
        // sum_{m>=0} z^m / (m! (j+m+1)); terms decay once m > |z|.
        let mut term = 1.0;
        let mut sum = 1.0 / (j as f64 + 1.0);
        for m in 1..200 {
            term *= z / m as f64;
            let add = term / (j + m + 1) as f64;
            sum += add;
            if add.abs() <= 1e-17 * sum.abs() {
                break;
            }
        }
        sum
    } else {
        let ez = z.exp();
        let mut g = if z > 500.0 {
            // avoid inf - 1: expm1 overflows the same way, but g0 = (e^z-1)/z
            ez / z
        } else {
            z.exp_m1() / z
        };
        for jj in 1..=j {
            g = (ez - jj as f64 * g) / z;
        }
        g
    }
}

fn binom(n: u32, k: u32) -> f64 {
    let mut c = 1.0;
    for i in 0..k {
        c = c * (n - i) as f64 / (i + 1) as f64;
    }
    c
}

/// ∫_a^b x^k exp(p + slope·(x−a)) dx, exact.
pub fn segment_poly_exp(a: f64, b: f64, p: f64, slope: f64, k: u32) -> f64 {
    let len = b - a;
    debug_assert!(len >= 0.0);
    if len == 0.0 {
        return 0.0;
    }
    let ep = p.exp();
    if ep == 0.0 {
        return 0.0;
    }
    let z = slope * len;
    let mut sum = 0.0;
    let mut len_pow = len; // len^{j+1}
    for j in 0..=k {
        sum += binom(k, j) * a.powi((k - j) as i32) * len_pow * g_poly_exp(j, z);
        len_pow *= len;
    }
    ep * sum
}

/// ∫_{−∞}^{t0} x^k exp(p + slope·(x−t0)) dx with slope > 0, exact.
pub fn left_tail_poly_exp(t0: f64, p: f64, slope: f64, k: u32) -> f64 {
    debug_assert!(slope > 0.0);
    let ep = p.exp();
    if ep == 0.0 {
        return 0.0;
    }
    // substitute t = t0 − x:  ∫₀^∞ (t0 − t)^k e^{−slope t} dt
    let mut sum = 0.0;
    let mut fact = 1.0; // j!
    let mut sp = slope; // slope^{j+1}
    let mut sign = 1.0;
    for j in 0..=k {
        if j > 0 {
            fact *= j as f64;
            sp *= slope;
            sign = -sign;
        }
        sum += binom(k, j) * t0.powi((k - j) as i32) * sign * fact / sp;
    }
    ep * sum
}

/// ∫_{tm}^{∞} x^k exp(p + slope·(x−tm)) dx with slope < 0, exact.
pub fn right_tail_poly_exp(tm: f64, p: f64, slope: f64, k: u32) -> f64 {
    debug_assert!(slope < 0.0);
    let ep = p.exp();
    if ep == 0.0 {
        return 0.0;
    }
    let rate = -slope;
    let mut sum = 0.0;
    let mut fact = 1.0;
    let mut rp = rate;
    for j in 0..=k {
        if j > 0 {
            fact *= j as f64;
            rp *= rate;
        }
        sum += binom(k, j) * tm.powi((k - j) as i32) * fact / rp;
    }
    ep * sum
}

/// log ∫_0^len exp(u + (v−u) t/len) dt for a segment with endpoint
/// log-values u, v; stable for any magnitudes.
pub fn log_segment_exp(u: f64, v: f64, len: f64) -> f64 {
    debug_assert!(len > 0.0);
    if u == f64::NEG_INFINITY && v == f64::NEG_INFINITY {
        return f64::NEG_INFINITY;
    }
    let m = u.max(v);
    let d = (u - v).abs();
    // ∫ = len e^m (1 − e^{−d})/d ;  d → 0 limit is len e^m.
    let log_ratio = if d < 1e-8 {
        (-d / 2.0 + d * d / 24.0).ln_1p()
    } else {
        ((-(-d).exp_m1()) / d).ln()
    };
    m + len.ln() + log_ratio
}

/// Signed ∫_a^b exp(p + slope (x−a)) dx (k = 0 specialization, linear space).
pub fn segment_exp(a: f64, b: f64, p: f64, slope: f64) -> f64 {
    let len = b - a;
    if len <= 0.0 {
        return 0.0;
    }
    let ep = p.exp();
    if ep == 0.0 {
        return 0.0;
    }
    let z = slope * len;
    if z.abs() < 1e-12 {
        ep * len * (1.0 + z / 2.0)
    } else {
        ep * len * z.exp_m1() / z
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute(f: impl Fn(f64) -> f64, a: f64, b: f64, n: usize) -> f64 {
        let h = (b - a) / n as f64;
        (0..n).map(|i| f(a + (i as f64 + 0.5) * h) * h).sum()
    }

    #[test]
    fn g_matches_series_and_recurrence() {
        // crossover consistency at |z| near 30
        for &z in &[-31.0, -29.0, 29.0, 31.0, 0.0, 1e-14, -45.0, 80.0] {
            for j in 0..7 {
                let oracle = brute(|s| s.powi(j as i32) * (z * s).exp(), 0.0, 1.0, 200_000);
                let got = g_poly_exp(j, z);
                assert!(
                    (got - oracle).abs() <= 1e-8 * oracle.abs().max(1.0),
                    "g_{j}({z}) = {got} vs {oracle}"
                );
            }
        }
    }

    #[test]
    fn segment_matches_quadrature() {
        let a = -1.3;
        let b = 2.1;
        let p = 0.4;
        let slope = -0.7;
        for k in 0..6 {
            let oracle = brute(
                |x| x.powi(k as i32) * (p + slope * (x - a)).exp(),
                a,
                b,
                400_000,
            );
            let got = segment_poly_exp(a, b, p, slope, k);
            assert!(
                (got - oracle).abs() <= 1e-7 * oracle.abs().max(1.0),
                "k={k}: {got} vs {oracle}"
            );
        }
    }

    #[test]
    fn tails_match_quadrature() {
        let t0 = 0.7;
        let p = -0.2;
        for k in 0..5 {
            let oracle = brute(
                |x| x.powi(k as i32) * (p + 1.4 * (x - t0)).exp(),
                -60.0,
                t0,
                800_000,
            );
            let got = left_tail_poly_exp(t0, p, 1.4, k);
            assert!(
                (got - oracle).abs() <= 1e-6 * oracle.abs().max(1.0),
                "left k={k}: {got} vs {oracle}"
            );
            let oracle_r = brute(
                |x| x.powi(k as i32) * (p - 0.9 * (x - t0)).exp(),
                t0,
                80.0,
                800_000,
            );
            let got_r = right_tail_poly_exp(t0, p, -0.9, k);
            assert!(
                (got_r - oracle_r).abs() <= 1e-6 * oracle_r.abs().max(1.0),
                "right k={k}: {got_r} vs {oracle_r}"
            );
        }
    }

    #[test]
    fn log_segment_stable_for_extreme_values() {
        // u, v far below the representable range of exp
        let l = log_segment_exp(-800.0, -802.0, 3.0);
        // ∫ = 3 e^{-800} (1 - e^{-2})/2
        let expect = -800.0 + (3.0_f64 * (1.0 - (-2.0_f64).exp()) / 2.0).ln();
        assert!((l - expect).abs() < 1e-12);
        // flat segment
        let l0 = log_segment_exp(-1.0, -1.0, 2.0);
        assert!((l0 - (-1.0 + 2.0_f64.ln())).abs() < 1e-14);
    }
}
