//! Log-concave densities in dimensions 1–3 with φ(x) = min_k (a_kᵀx + b_k)
//! on a bounded domain (box or H-polytope). The minimum of affine maps is
//! concave by construction; normalization is adaptive quadrature with a
//! reported error estimate (exact in dimension one via the lower envelope).

use crate::numerics::quad;
use crate::rng;
use crate::simplex::HPolytope;
use crate::{Error, Result};
use rand::Rng;

use super::piecewise::PiecewiseLogLinearDensity;

/// Supported support descriptions.
#[derive(Debug, Clone)]
pub enum Domain {
    Box { lo: Vec<f64>, hi: Vec<f64> },
    Polytope(HPolytope),
}

impl Domain {
    pub fn dim(&self) -> usize {
        match self {
            Domain::Box { lo, .. } => lo.len(),
            Domain::Polytope(p) => p.dim(),
        }
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        match self {
            Domain::Box { lo, hi } => x
                .iter()
                .zip(lo.iter().zip(hi))
                .all(|(&xi, (&l, &h))| xi >= l && xi <= h),
            Domain::Polytope(p) => p.contains(x, 1e-12),
        }
    }
}

#[derive(Debug, Clone)]
pub struct PolyhedralLogDensity {
    dim: usize,
    pieces: Vec<(Vec<f64>, f64)>,
    domain: Domain,
    bbox_lo: Vec<f64>,
    bbox_hi: Vec<f64>,
    log_norm: f64,
    norm_error: f64,
    mode: Vec<f64>,
    log_f_max: f64,
}

impl PolyhedralLogDensity {
    /// Build and normalize; returns the density together with the absolute
    /// normalization error estimate (zero in dimension one).
    pub fn new(
        dim: usize,
        pieces: Vec<(Vec<f64>, f64)>,
        domain: Domain,
        tol: f64,
    ) -> Result<(Self, f64)> {
        if !(1..=3).contains(&dim) {
            return Err(Error::InvalidParameter(format!(
                "polyhedral densities support dim 1..=3, got {dim}"
            )));
        }
        if pieces.is_empty() {
            return Err(Error::InvalidParameter("need at least one affine piece".into()));
        }
        for (a, b) in &pieces {
            if a.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: a.len(),
                });
            }
            if a.iter().any(|x| !x.is_finite()) || !b.is_finite() {
                return Err(Error::InvalidParameter("affine pieces must be finite".into()));
            }
        }
        if domain.dim() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: domain.dim(),
            });
        }
        let (bbox_lo, bbox_hi) = bounding_box(&domain)?;
        let mut d = PolyhedralLogDensity {
            dim,
            pieces,
            domain,
            bbox_lo,
            bbox_hi,
            log_norm: 0.0,
            norm_error: 0.0,
            mode: Vec::new(),
            log_f_max: 0.0,
        };
        let err = d.normalize(tol)?;
        d.locate_mode();
        Ok((d, err))
    }

    fn normalize(&mut self, tol: f64) -> Result<f64> {
        if self.dim == 1 {
            let pw = self.to_piecewise()?;
            self.log_norm = pw.log_norm();
            self.norm_error = 0.0;
            return Ok(0.0);
        }
        let max_cells = if self.dim == 2 { 30_000 } else { 80_000 };
        let est = quad::integrate_box(
            &|x| {
                if self.domain.contains(x) {
                    self.log_density_raw(x).exp()
                } else {
                    0.0
                }
            },
            &self.bbox_lo,
            &self.bbox_hi,
            tol,
            max_cells,
        );
        if !(est.value > 0.0) || !est.value.is_finite() {
            return Err(Error::NonIntegrableTails(
                "polyhedral density has zero or non-finite mass on its domain".into(),
            ));
        }
        if est.error > tol.max(1e-14) {
            return Err(Error::QuadratureFailure {
                target: tol,
                achieved: est.error,
            });
        }
        self.log_norm = est.value.ln();
        self.norm_error = est.error;
        Ok(est.error)
    }

    /// φ(x) before normalization; −∞ outside the domain.
    pub fn log_density_raw(&self, x: &[f64]) -> f64 {
        if !self.domain.contains(x) {
            return f64::NEG_INFINITY;
        }
        self.pieces
            .iter()
            .map(|(a, b)| a.iter().zip(x).map(|(ai, xi)| ai * xi).sum::<f64>() + b)
            .fold(f64::INFINITY, f64::min)
    }

    pub fn log_density(&self, x: &[f64]) -> f64 {
        let raw = self.log_density_raw(x);
        if raw == f64::NEG_INFINITY {
            raw
        } else {
            raw - self.log_norm
        }
    }

    pub fn density(&self, x: &[f64]) -> f64 {
        self.log_density(x).exp()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn domain(&self) -> &Domain {
        &self.domain
    }

    pub fn pieces(&self) -> &[(Vec<f64>, f64)] {
        &self.pieces
    }

    pub fn log_norm(&self) -> f64 {
        self.log_norm
    }

    pub fn norm_error(&self) -> f64 {
        self.norm_error
    }

    pub fn bbox(&self) -> (&[f64], &[f64]) {
        (&self.bbox_lo, &self.bbox_hi)
    }

    pub fn mode(&self) -> &[f64] {
        &self.mode
    }

    /// Largest Lipschitz constant of φ (max ‖a_k‖): used for rigorous
    /// grid-gap inflation in the inequality engine.
    pub fn log_lipschitz(&self) -> f64 {
        self.pieces
            .iter()
            .map(|(a, _)| a.iter().map(|x| x * x).sum::<f64>().sqrt())
            .fold(0.0, f64::max)
    }

    /// In dimension one the lower envelope of the affine pieces is concave
    /// piecewise linear: convert exactly.
    pub fn to_piecewise(&self) -> Result<PiecewiseLogLinearDensity> {
        if self.dim != 1 {
            return Err(Error::InvalidParameter(
                "piecewise conversion only applies in dimension one".into(),
            ));
        }
        let (lo, hi) = (self.bbox_lo[0], self.bbox_hi[0]);
        let mut cuts = vec![lo, hi];
        for i in 0..self.pieces.len() {
            for j in i + 1..self.pieces.len() {
                let (a1, b1) = (&self.pieces[i].0[0], self.pieces[i].1);
                let (a2, b2) = (&self.pieces[j].0[0], self.pieces[j].1);
                if (a1 - a2).abs() > 1e-14 {
                    let x = (b2 - b1) / (a1 - a2);
                    if x > lo && x < hi {
                        cuts.push(x);
                    }
                }
            }
        }
        cuts.sort_by(|a, b| a.partial_cmp(b).unwrap());
        cuts.dedup_by(|a, b| (*a - *b).abs() < 1e-13 * (1.0 + a.abs()));
        let phi = |x: f64| {
            self.pieces
                .iter()
                .map(|(a, b)| a[0] * x + b)
                .fold(f64::INFINITY, f64::min)
        };
        let logvals: Vec<f64> = cuts.iter().map(|&x| phi(x)).collect();
        PiecewiseLogLinearDensity::new(cuts, logvals, f64::INFINITY, f64::NEG_INFINITY)
    }

    fn locate_mode(&mut self) {
        // grid scan plus local refinement; φ is concave so this converges
        let mut best_x: Vec<f64> = self
            .bbox_lo
            .iter()
            .zip(&self.bbox_hi)
            .map(|(&l, &h)| 0.5 * (l + h))
            .collect();
        let mut best = f64::NEG_INFINITY;
        let n = match self.dim {
            1 => 257,
            2 => 33,
            _ => 13,
        };
        let mut widths: Vec<f64> = self
            .bbox_lo
            .iter()
            .zip(&self.bbox_hi)
            .map(|(&l, &h)| h - l)
            .collect();
        let mut center = best_x.clone();
        for _round in 0..8 {
            let mut idx = vec![0usize; self.dim];
            loop {
                let x: Vec<f64> = (0..self.dim)
                    .map(|k| {
                        let lo = (center[k] - widths[k] / 2.0).max(self.bbox_lo[k]);
                        let hi = (center[k] + widths[k] / 2.0).min(self.bbox_hi[k]);
                        lo + (hi - lo) * idx[k] as f64 / (n - 1) as f64
                    })
                    .collect();
                let v = self.log_density_raw(&x);
                if v > best {
                    best = v;
                    best_x = x;
                }
                let mut k = 0;
                loop {
                    if k == self.dim {
                        break;
                    }
                    idx[k] += 1;
                    if idx[k] < n {
                        break;
                    }
                    idx[k] = 0;
                    k += 1;
                }
                if k == self.dim {
                    break;
                }
            }
            center = best_x.clone();
            for w in &mut widths {
                *w /= n as f64 / 3.0;
            }
        }
        self.mode = best_x;
        self.log_f_max = best - self.log_norm;
    }

    /// Rejection sampling from the bounding box under the flat envelope
    /// f_max; deterministic given the seed.
    pub fn sample(&self, seed: u64, n: usize) -> Result<Vec<Vec<f64>>> {
        let mut r = rng::stream(seed, "polyhedral-rejection");
        let mut out = Vec::with_capacity(n);
        let log_env = self.log_f_max + 1e-9;
        let mut tries: usize = 0;
        let max_tries = 2_000_000 + 20_000 * n;
        while out.len() < n {
            tries += 1;
            if tries > max_tries {
                return Err(Error::SamplingFailure(format!(
                    "rejection acceptance too low after {tries} proposals"
                )));
            }
            let x: Vec<f64> = self
                .bbox_lo
                .iter()
                .zip(&self.bbox_hi)
                .map(|(&l, &h)| l + (h - l) * r.gen::<f64>())
                .collect();
            let ld = self.log_density(&x);
            if ld == f64::NEG_INFINITY {
                continue;
            }
            let u: f64 = r.gen();
            if u.ln() <= ld - log_env {
                out.push(x);
            }
        }
        Ok(out)
    }
}

fn bounding_box(domain: &Domain) -> Result<(Vec<f64>, Vec<f64>)> {
    match domain {
        Domain::Box { lo, hi } => {
            if lo.len() != hi.len()
                || lo
                    .iter()
                    .zip(hi)
                    .any(|(&l, &h)| !l.is_finite() || !h.is_finite() || h <= l)
            {
                return Err(Error::InvalidParameter(
                    "domain box needs finite lo < hi per axis".into(),
                ));
            }
            Ok((lo.clone(), hi.clone()))
        }
        Domain::Polytope(p) => {
            let verts = polytope_vertices(p)?;
            if verts.is_empty() {
                return Err(Error::InvalidParameter(
                    "polytope domain has no vertices (empty or unbounded)".into(),
                ));
            }
            check_bounded(p)?;
            let d = p.dim();
            let mut lo = vec![f64::INFINITY; d];
            let mut hi = vec![f64::NEG_INFINITY; d];
            for v in &verts {
                for k in 0..d {
                    lo[k] = lo[k].min(v[k]);
                    hi[k] = hi[k].max(v[k]);
                }
            }
            for k in 0..d {
                if hi[k] - lo[k] <= 0.0 {
                    return Err(Error::InvalidParameter(
                        "polytope domain is lower-dimensional".into(),
                    ));
                }
            }
            Ok((lo, hi))
        }
    }
}

/// All vertices of a (small) H-polytope by enumerating d-subsets of active
/// constraints.
fn polytope_vertices(p: &HPolytope) -> Result<Vec<Vec<f64>>> {
    use crate::numerics::linalg;
    let d = p.dim();
    let hs = p.halfspaces();
    let k = hs.len();
    if k < d {
        return Ok(Vec::new());
    }
    let mut verts: Vec<Vec<f64>> = Vec::new();
    let mut combo = vec![0usize; d];
    fn rec(
        hs: &[(Vec<f64>, f64)],
        p: &HPolytope,
        d: usize,
        combo: &mut Vec<usize>,
        depth: usize,
        start: usize,
        verts: &mut Vec<Vec<f64>>,
    ) {
        if depth == d {
            let a: Vec<Vec<f64>> = combo.iter().map(|&i| hs[i].0.clone()).collect();
            let b: Vec<f64> = combo.iter().map(|&i| hs[i].1).collect();
            if let Ok(x) = crate::numerics::linalg::solve(&a, &b) {
                if p.contains(&x, 1e-9) {
                    verts.push(x);
                }
            }
            return;
        }
        for i in start..hs.len() {
            combo[depth] = i;
            rec(hs, p, d, combo, depth + 1, i + 1, verts);
        }
    }
    let _ = linalg::det; // keep the import local to the closure above
    rec(hs, p, d, &mut combo, 0, 0, &mut verts);
    Ok(verts)
}

/// Reject recession directions: a bounded polytope admits no direction with
/// u_kᵀ dir ≤ 0 for every halfspace. Checked on the axes plus a fixed
/// deterministic sample of unit directions.
fn check_bounded(p: &HPolytope) -> Result<()> {
    let d = p.dim();
    let mut dirs: Vec<Vec<f64>> = Vec::new();
    for k in 0..d {
        let mut e = vec![0.0; d];
        e[k] = 1.0;
        dirs.push(e.clone());
        e[k] = -1.0;
        dirs.push(e);
    }
    let mut r = rng::stream(0xB0BD, "polytope-recession");
    for _ in 0..500 {
        let v: Vec<f64> = (0..d).map(|_| 2.0 * r.gen::<f64>() - 1.0).collect();
        let norm: f64 = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 1e-6 {
            dirs.push(v.into_iter().map(|x| x / norm).collect());
        }
    }
    for dir in dirs {
        let escapes = p
            .halfspaces()
            .iter()
            .all(|(u, _)| u.iter().zip(&dir).map(|(a, b)| a * b).sum::<f64>() <= 1e-12);
        if escapes {
            return Err(Error::InvalidParameter(
                "polytope domain appears unbounded (recession direction found)".into(),
            ));
        }
    }
    Ok(())
}

/// Tangent-plane approximation of the standard Gaussian in `dim` dimensions:
/// planes of φ(x) = −‖x‖²/2 at a grid of anchor points. Since tangent planes
/// of a concave function lie above it, the minimum is concave and close.
pub fn gaussian_tangent_approx(dim: usize, spacing: f64, half_width: f64) -> Result<(PolyhedralLogDensity, f64)> {
    let n = (2.0 * half_width / spacing).ceil() as usize + 1;
    let axis: Vec<f64> = (0..n)
        .map(|i| -half_width + 2.0 * half_width * i as f64 / (n - 1) as f64)
        .collect();
    let mut pieces = Vec::new();
    let mut idx = vec![0usize; dim];
    loop {
        let p: Vec<f64> = idx.iter().map(|&i| axis[i]).collect();
        // tangent at p: φ(x) ≈ −pᵀx + ‖p‖²/2
        let b = 0.5 * p.iter().map(|x| x * x).sum::<f64>();
        pieces.push((p.iter().map(|x| -x).collect(), b));
        let mut k = 0;
        loop {
            if k == dim {
                break;
            }
            idx[k] += 1;
            if idx[k] < n {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
        if k == dim {
            break;
        }
    }
    let lo = vec![-half_width - 2.0; dim];
    let hi = vec![half_width + 2.0; dim];
    PolyhedralLogDensity::new(dim, pieces, Domain::Box { lo, hi }, 1e-6)
}
