//! Simplices and the measure-theoretic toolkit built on them: volumes,
//! barycentric coordinates, corner and replaced simplices, uniform
//! sampling via normalized exponentials, probabilities of simplices and
//! balls under a density, and halfspace-polytope predicates.

use crate::density::Density;
use crate::numerics::{linalg, quad, Estimate};
use crate::rng;
use crate::{Error, Result};
use rand::Rng;

/// Relative determinant threshold below which a simplex is degenerate.
const DEGENERACY_REL: f64 = 1e-12;

/// A nondegenerate simplex: d+1 vertices in ℝ^d with cached volume,
/// augmented matrix X = [vertices; 1 … 1] and its largest singular value.
#[derive(Debug, Clone)]
pub struct Simplex {
    vertices: Vec<Vec<f64>>,
    dim: usize,
    volume: f64,
    sigma_max: f64,
}

impl Simplex {
    pub fn new(vertices: Vec<Vec<f64>>) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::InvalidParameter("simplex needs vertices".into()));
        }
        let dim = vertices[0].len();
        if dim == 0 || dim > 3 {
            return Err(Error::InvalidParameter(format!(
                "supported dimensions are 1..=3, got {dim}"
            )));
        }
        if vertices.len() != dim + 1 {
            return Err(Error::InvalidParameter(format!(
                "a {dim}-simplex needs {} vertices, got {}",
                dim + 1,
                vertices.len()
            )));
        }
        if vertices
            .iter()
            .any(|v| v.len() != dim || v.iter().any(|x| !x.is_finite()))
        {
            return Err(Error::InvalidParameter(
                "vertices must be finite and of equal dimension".into(),
            ));
        }
        let edge: Vec<Vec<f64>> = (0..dim)
            .map(|r| (0..dim).map(|c| vertices[c + 1][r] - vertices[0][r]).collect())
            .collect();
        let det = linalg::det(&edge);
        let scale = vertices
            .iter()
            .skip(1)
            .map(|v| {
                v.iter()
                    .zip(&vertices[0])
                    .map(|(a, b)| (a - b) * (a - b))
                    .sum::<f64>()
                    .sqrt()
            })
            .fold(0.0_f64, f64::max);
        if det.abs() <= DEGENERACY_REL * scale.powi(dim as i32).max(f64::MIN_POSITIVE) {
            return Err(Error::DegenerateSimplex { det });
        }
        let mut fact = 1.0;
        for k in 2..=dim {
            fact *= k as f64;
        }
        let volume = det.abs() / fact;
        let sigma_max = linalg::sigma_max(&Self::augmented(&vertices));
        Ok(Simplex {
            vertices,
            dim,
            volume,
            sigma_max,
        })
    }

    fn augmented(vertices: &[Vec<f64>]) -> Vec<Vec<f64>> {
        let dim = vertices[0].len();
        let mut x = vec![vec![0.0; dim + 1]; dim + 1];
        for (col, v) in vertices.iter().enumerate() {
            for (row, &coord) in v.iter().enumerate() {
                x[row][col] = coord;
            }
            x[dim][col] = 1.0;
        }
        x
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[Vec<f64>] {
        &self.vertices
    }

    /// |Δ| = |det(x_1−x_0, …, x_d−x_0)| / d!.
    pub fn volume(&self) -> f64 {
        self.volume
    }

    /// Largest singular value of the augmented matrix X.
    pub fn sigma_max(&self) -> f64 {
        self.sigma_max
    }

    pub fn centroid(&self) -> Vec<f64> {
        let mut c = vec![0.0; self.dim];
        for v in &self.vertices {
            for (ci, vi) in c.iter_mut().zip(v) {
                *ci += vi / (self.dim + 1) as f64;
            }
        }
        c
    }

    /// Barycentric coordinates: the unique λ with Σλ_i = 1, Σλ_i x_i = y.
    pub fn barycentric(&self, y: &[f64]) -> Result<Vec<f64>> {
        if y.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: y.len(),
            });
        }
        let x = Self::augmented(&self.vertices);
        let mut rhs: Vec<f64> = y.to_vec();
        rhs.push(1.0);
        linalg::solve(&x, &rhs)
    }

    /// y ∈ Δ within a small tolerance on the barycentric coordinates.
    pub fn contains(&self, y: &[f64]) -> bool {
        match self.barycentric(y) {
            Ok(lam) => lam.iter().all(|&l| l >= -1e-12),
            Err(_) => false,
        }
    }

    /// The corner simplex: the reflection of Δ at the vertex x_j.
    pub fn corner_simplex(&self, j: usize) -> Simplex {
        assert!(j <= self.dim, "corner index out of range");
        let xj = &self.vertices[j];
        let verts: Vec<Vec<f64>> = self
            .vertices
            .iter()
            .map(|v| xj.iter().zip(v).map(|(a, b)| 2.0 * a - b).collect())
            .collect();
        Simplex::new(verts).expect("reflection preserves nondegeneracy")
    }

    /// |Δ_j(y)| = |λ_j| |Δ|: the volume after replacing vertex j with y.
    pub fn replaced_simplex_volume(&self, j: usize, y: &[f64]) -> Result<f64> {
        let lam = self.barycentric(y)?;
        Ok(lam[j].abs() * self.volume)
    }

    /// Barycentric weights B_i = E_i / Σ E_j from independent standard
    /// exponentials; each point Σ B_i x_i is uniform on Δ.
    pub fn sample_barycentric(&self, seed: u64, n: usize) -> Vec<Vec<f64>> {
        let mut r = rng::stream(seed, "simplex-dirichlet");
        (0..n)
            .map(|_| {
                let e: Vec<f64> = (0..=self.dim)
                    .map(|_| {
                        let mut u: f64 = r.gen();
                        while u <= 0.0 {
                            u = r.gen();
                        }
                        -u.ln()
                    })
                    .collect();
                let s: f64 = e.iter().sum();
                e.into_iter().map(|x| x / s).collect()
            })
            .collect()
    }

    /// Uniform points on Δ, deterministic given the seed.
    pub fn sample(&self, seed: u64, n: usize) -> Vec<Vec<f64>> {
        self.sample_barycentric(seed, n)
            .into_iter()
            .map(|b| self.point_from_barycentric(&b))
            .collect()
    }

    pub fn point_from_barycentric(&self, b: &[f64]) -> Vec<f64> {
        let mut p = vec![0.0; self.dim];
        for (w, v) in b.iter().zip(&self.vertices) {
            for (pi, vi) in p.iter_mut().zip(v) {
                *pi += w * vi;
            }
        }
        p
    }
}

/// How to compute probabilities of regions under a density.
#[derive(Debug, Clone, Copy)]
pub enum ProbMethod {
    Quadrature { tol: f64, max_cells: usize },
    MonteCarlo { n: usize, seed: u64 },
}

impl ProbMethod {
    pub fn default_quadrature() -> Self {
        ProbMethod::Quadrature {
            tol: 1e-8,
            max_cells: 20_000,
        }
    }
}

/// P(Δ) = ∫_Δ f with an error bound (0 when exact, three standard errors
/// for Monte Carlo, the quadrature estimate otherwise).
pub fn probability(f: &Density, s: &Simplex, method: ProbMethod) -> Result<Estimate> {
    if f.dim() != s.dim() {
        return Err(Error::DimensionMismatch {
            expected: s.dim(),
            got: f.dim(),
        });
    }
    // exact in one dimension for piecewise representations
    if s.dim() == 1 {
        if let Density::Piecewise(p) = f {
            let (a, b) = (
                s.vertices()[0][0].min(s.vertices()[1][0]),
                s.vertices()[0][0].max(s.vertices()[1][0]),
            );
            return Ok(Estimate::exact((p.cdf(b) - p.cdf(a)).max(0.0)));
        }
    }
    match method {
        ProbMethod::Quadrature { tol, max_cells } => {
            let g = |x: &[f64]| f.density_unchecked(x);
            let est = quad::integrate_simplex(&g, s.vertices(), tol, max_cells);
            Ok(est)
        }
        ProbMethod::MonteCarlo { n, seed } => {
            if n < 2 {
                return Err(Error::InvalidParameter("Monte Carlo needs n >= 2".into()));
            }
            let pts = s.sample(seed, n);
            let vals: Vec<f64> = pts.iter().map(|p| f.density_unchecked(p)).collect();
            let mean = vals.iter().sum::<f64>() / n as f64;
            let var = vals.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (n - 1) as f64;
            let se = (var / n as f64).sqrt();
            Ok(Estimate {
                value: s.volume() * mean,
                error: 3.0 * s.volume() * se,
            })
        }
    }
}

/// P(B(center, radius)) = ∫_B f; exact in one dimension for piecewise
/// representations, adaptive quadrature otherwise.
pub fn ball_probability(
    f: &Density,
    center: &[f64],
    radius: f64,
    tol: f64,
    max_cells: usize,
) -> Result<Estimate> {
    if f.dim() != center.len() {
        return Err(Error::DimensionMismatch {
            expected: center.len(),
            got: f.dim(),
        });
    }
    if f.dim() == 1 {
        if let Density::Piecewise(p) = f {
            let v = (p.cdf(center[0] + radius) - p.cdf(center[0] - radius)).max(0.0);
            return Ok(Estimate::exact(v));
        }
    }
    let g = |x: &[f64]| f.density_unchecked(x);
    Ok(quad::integrate_ball(&g, center, radius, tol, max_cells))
}

/// An H-polytope: the intersection of halfspaces u_kᵀ x ≤ c_k.
#[derive(Debug, Clone)]
pub struct HPolytope {
    halfspaces: Vec<(Vec<f64>, f64)>,
    dim: usize,
}

impl HPolytope {
    pub fn new(halfspaces: Vec<(Vec<f64>, f64)>) -> Result<Self> {
        if halfspaces.is_empty() {
            return Err(Error::InvalidParameter("polytope needs halfspaces".into()));
        }
        let dim = halfspaces[0].0.len();
        for (u, c) in &halfspaces {
            if u.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: u.len(),
                });
            }
            let norm: f64 = u.iter().map(|x| x * x).sum::<f64>().sqrt();
            if !norm.is_finite() || norm <= 0.0 || !c.is_finite() {
                return Err(Error::InvalidParameter(
                    "halfspace normals must be finite and nonzero".into(),
                ));
            }
        }
        Ok(HPolytope { halfspaces, dim })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn halfspaces(&self) -> &[(Vec<f64>, f64)] {
        &self.halfspaces
    }

    pub fn contains(&self, x: &[f64], tol: f64) -> bool {
        self.halfspaces
            .iter()
            .all(|(u, c)| dot(u, x) <= c + tol)
    }

    /// B(center, radius) ⊂ 𝒞: every halfspace keeps the whole ball inside,
    /// i.e. u_kᵀ·center + radius·‖u_k‖ ≤ c_k (+1e−12 slack).
    pub fn ball_inside(&self, center: &[f64], radius: f64) -> bool {
        debug_assert!(radius >= 0.0);
        self.halfspaces.iter().all(|(u, c)| {
            let norm = u.iter().map(|x| x * x).sum::<f64>().sqrt();
            dot(u, center) + radius * norm <= c + 1e-12
        })
    }

    /// True when some single halfspace already separates the whole ball
    /// from the polytope (a sufficient certificate for B ∩ 𝒞 = ∅).
    pub fn ball_separated(&self, center: &[f64], radius: f64) -> bool {
        self.halfspaces.iter().any(|(u, c)| {
            let norm = u.iter().map(|x| x * x).sum::<f64>().sqrt();
            dot(u, center) - radius * norm > c + 1e-12
        })
    }

    /// Chebyshev center: the (center, radius) of the largest inscribed ball,
    /// found by enumerating d+1-subsets of active constraints (the polytopes
    /// here are small). Errs when the interior is empty.
    pub fn chebyshev_center(&self) -> Result<(Vec<f64>, f64)> {
        let d = self.dim;
        let k = self.halfspaces.len();
        if k < d + 1 {
            return Err(Error::InvalidParameter(
                "chebyshev center needs at least d+1 halfspaces".into(),
            ));
        }
        let norms: Vec<f64> = self
            .halfspaces
            .iter()
            .map(|(u, _)| u.iter().map(|x| x * x).sum::<f64>().sqrt())
            .collect();
        let mut best: Option<(Vec<f64>, f64)> = None;
        let mut combo = vec![0usize; d + 1];
        enumerate_combinations(k, d + 1, &mut combo, 0, 0, &mut |sel: &[usize]| {
            // active constraints: u_iᵀ c + ‖u_i‖ r = c_i
            let mut a = Vec::with_capacity(d + 1);
            let mut b = Vec::with_capacity(d + 1);
            for &i in sel {
                let mut row = self.halfspaces[i].0.clone();
                row.push(norms[i]);
                a.push(row);
                b.push(self.halfspaces[i].1);
            }
            if let Ok(sol) = linalg::solve(&a, &b) {
                let (c, r) = (sol[..d].to_vec(), sol[d]);
                if r.is_finite() && r >= 0.0 {
                    let feasible = self
                        .halfspaces
                        .iter()
                        .zip(&norms)
                        .all(|((u, ci), n)| dot(u, &c) + r * n <= ci + 1e-9 * (1.0 + ci.abs()));
                    if feasible && best.as_ref().map_or(true, |(_, br)| r > *br) {
                        best = Some((c, r));
                    }
                }
            }
        });
        best.ok_or_else(|| Error::Precondition("polytope has empty interior".into()))
    }
}

fn enumerate_combinations(
    n: usize,
    k: usize,
    combo: &mut Vec<usize>,
    depth: usize,
    start: usize,
    visit: &mut impl FnMut(&[usize]),
) {
    if depth == k {
        visit(combo);
        return;
    }
    for i in start..n {
        combo[depth] = i;
        enumerate_combinations(n, k, combo, depth + 1, i + 1, visit);
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::density::catalog;

    fn unit_triangle() -> Simplex {
        Simplex::new(vec![vec![0.0, 0.0], vec![1.0, 0.0], vec![0.0, 1.0]]).unwrap()
    }

    #[test]
    fn canonical_volumes_are_inverse_factorials() {
        let d1 = Simplex::new(vec![vec![0.0], vec![1.0]]).unwrap();
        assert_eq!(d1.volume(), 1.0);
        assert_eq!(unit_triangle().volume(), 1.0 / 2.0);
        let d3 = Simplex::new(vec![
            vec![0.0, 0.0, 0.0],
            vec![1.0, 0.0, 0.0],
            vec![0.0, 1.0, 0.0],
            vec![0.0, 0.0, 1.0],
        ])
        .unwrap();
        assert_eq!(d3.volume(), 1.0 / 6.0);
    }

    #[test]
    fn collinear_vertices_rejected() {
        let r = Simplex::new(vec![vec![0.0, 0.0], vec![1.0, 1.0], vec![2.0, 2.0]]);
        assert!(matches!(r, Err(Error::DegenerateSimplex { .. })));
    }

    #[test]
    fn barycentric_basics() {
        let s = unit_triangle();
        for (j, v) in s.vertices().to_vec().iter().enumerate() {
            let lam = s.barycentric(v).unwrap();
            for (i, &l) in lam.iter().enumerate() {
                let expect = if i == j { 1.0 } else { 0.0 };
                assert!((l - expect).abs() < 1e-12);
            }
        }
        let lam = s.barycentric(&s.centroid()).unwrap();
        assert!(lam.iter().all(|&l| (l - 1.0 / 3.0).abs() < 1e-12));
        // outside point on the 1-simplex [0,1]
        let seg = Simplex::new(vec![vec![0.0], vec![1.0]]).unwrap();
        let lam = seg.barycentric(&[2.0]).unwrap();
        assert!((lam[0] + 1.0).abs() < 1e-12 && (lam[1] - 2.0).abs() < 1e-12);
    }

    #[test]
    fn corner_simplices_on_the_interval() {
        let seg = Simplex::new(vec![vec![0.0], vec![1.0]]).unwrap();
        let c0 = seg.corner_simplex(0);
        let mut xs: Vec<f64> = c0.vertices().iter().map(|v| v[0]).collect();
        xs.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert_eq!(xs, vec![-1.0, 0.0]);
        let c1 = seg.corner_simplex(1);
        let mut xs: Vec<f64> = c1.vertices().iter().map(|v| v[0]).collect();
        xs.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert_eq!(xs, vec![1.0, 2.0]);
    }

    #[test]
    fn reflection_preserves_volume() {
        let mut r = crate::rng::stream(11, "reflect-volume");
        for _ in 0..50 {
            let verts: Vec<Vec<f64>> = (0..4)
                .map(|_| (0..3).map(|_| 4.0 * r.gen::<f64>() - 2.0).collect())
                .collect();
            if let Ok(s) = Simplex::new(verts) {
                for j in 0..4 {
                    let c = s.corner_simplex(j);
                    assert!((c.volume() - s.volume()).abs() < 1e-10 * s.volume());
                }
            }
        }
    }

    #[test]
    fn replaced_volume_examples() {
        let s = unit_triangle();
        // y = x_0 keeps the volume, y = x_1 kills it
        assert!((s.replaced_simplex_volume(0, &[0.0, 0.0]).unwrap() - 0.5).abs() < 1e-12);
        assert!(s.replaced_simplex_volume(0, &[1.0, 0.0]).unwrap().abs() < 1e-12);
        // y = (1,1): λ_0 = 1 − 1 − 1 = −1 so the volume is 1·(1/2)
        assert!((s.replaced_simplex_volume(0, &[1.0, 1.0]).unwrap() - 0.5).abs() < 1e-12);
    }

    #[test]
    fn partition_identity_over_random_pairs() {
        let mut r = crate::rng::stream(5, "partition-identity");
        for _ in 0..300 {
            let verts: Vec<Vec<f64>> = (0..3)
                .map(|_| (0..2).map(|_| 3.0 * r.gen::<f64>() - 1.0).collect())
                .collect();
            let s = match Simplex::new(verts) {
                Ok(s) => s,
                Err(_) => continue,
            };
            let y = s.sample(r.gen(), 1).pop().unwrap();
            let lam = s.barycentric(&y).unwrap();
            let total: f64 = (0..3)
                .filter(|&j| lam[j] > 0.0)
                .map(|j| s.replaced_simplex_volume(j, &y).unwrap())
                .sum();
            assert!(
                (total - s.volume()).abs() < 1e-10,
                "partition failed: {total} vs {}",
                s.volume()
            );
        }
    }

    #[test]
    fn replaced_volume_lower_bound_via_sigma_max() {
        let mut r = crate::rng::stream(6, "volume-lower-bound");
        for _ in 0..200 {
            let verts: Vec<Vec<f64>> = (0..3)
                .map(|_| (0..2).map(|_| 4.0 * r.gen::<f64>() - 2.0).collect())
                .collect();
            let s = match Simplex::new(verts) {
                Ok(s) => s,
                Err(_) => continue,
            };
            let y: Vec<f64> = (0..2).map(|_| 10.0 * r.gen::<f64>() - 5.0).collect();
            let max_j = (0..3)
                .map(|j| s.replaced_simplex_volume(j, &y).unwrap())
                .fold(0.0_f64, f64::max);
            let norm2: f64 = y.iter().map(|x| x * x).sum();
            let bound =
                s.volume() / (3.0_f64).sqrt() / s.sigma_max() * (norm2 + 1.0).sqrt();
            assert!(max_j >= bound * (1.0 - 1e-9), "{max_j} < {bound}");
        }
    }

    #[test]
    fn sampler_barycentric_marginals() {
        let s = unit_triangle();
        let n = 100_000;
        let b = s.sample_barycentric(17, n);
        for i in 0..3 {
            let mean = b.iter().map(|w| w[i]).sum::<f64>() / n as f64;
            // Beta(1, 2): mean 1/3, var = 2/(9*4) = 1/18
            let se = (1.0 / 18.0 / n as f64).sqrt();
            assert!(
                (mean - 1.0 / 3.0).abs() <= 3.0 * se,
                "coordinate {i} mean {mean}"
            );
        }
        // all sampled points have nonnegative barycentric coordinates
        for w in b.iter().take(1000) {
            assert!(w.iter().all(|&x| x >= 0.0));
        }
    }

    #[test]
    fn sampler_b1_uniform_on_the_interval() {
        // d = 1: B_1 ~ Beta(1,1) = U(0,1)
        let seg = Simplex::new(vec![vec![0.0], vec![1.0]]).unwrap();
        let n = 20_000;
        let mut b1: Vec<f64> = seg
            .sample_barycentric(23, n)
            .into_iter()
            .map(|w| w[1])
            .collect();
        b1.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let mut ks = 0.0_f64;
        for (i, &x) in b1.iter().enumerate() {
            ks = ks
                .max(((i + 1) as f64 / n as f64 - x).abs())
                .max((i as f64 / n as f64 - x).abs());
        }
        // Massart 99% radius
        assert!(ks <= 1.6276 / (n as f64).sqrt(), "KS = {ks}");
    }

    #[test]
    fn uniform_sampler_chi_square_barycentric_cells() {
        // 10 cells by floor(10 · B_0); B_0 ~ Beta(1, 2) in d = 2
        let s = unit_triangle();
        let n = 100_000;
        let b = s.sample_barycentric(29, n);
        let mut counts = [0usize; 10];
        for w in &b {
            let c = ((w[0] * 10.0) as usize).min(9);
            counts[c] += 1;
        }
        // P(B_0 in [k/10, (k+1)/10]) with CDF 1 − (1−x)² for Beta(1,2)
        let cdf = |x: f64| 1.0 - (1.0 - x) * (1.0 - x);
        let mut chi2 = 0.0;
        for (k, &c) in counts.iter().enumerate() {
            let p = cdf((k as f64 + 1.0) / 10.0) - cdf(k as f64 / 10.0);
            let expect = p * n as f64;
            chi2 += (c as f64 - expect) * (c as f64 - expect) / expect;
        }
        // chi-square with 9 dof, level 0.001 critical value
        assert!(chi2 <= 27.877, "chi2 = {chi2}");
    }

    #[test]
    fn probability_exact_and_monte_carlo_agree() {
        let u = Density::Piecewise(catalog::uniform(0.0, 2.0));
        let seg = Simplex::new(vec![vec![0.0], vec![1.0]]).unwrap();
        let exact = probability(&u, &seg, ProbMethod::default_quadrature()).unwrap();
        assert_eq!(exact.value, 0.5);
        assert_eq!(exact.error, 0.0);

        let e = Density::Piecewise(catalog::exponential(1.0));
        let p = probability(&e, &seg, ProbMethod::default_quadrature()).unwrap();
        assert!((p.value - (1.0 - (-1.0_f64).exp())).abs() < 1e-14);

        let mc = probability(&e, &seg, ProbMethod::MonteCarlo { n: 50_000, seed: 3 }).unwrap();
        assert!(
            (mc.value - p.value).abs() <= mc.error + 1e-12,
            "MC {} vs exact {} (err {})",
            mc.value,
            p.value,
            mc.error
        );
    }

    #[test]
    fn ball_predicates_follow_the_convexity_lemma() {
        let mut r = crate::rng::stream(31, "ball-polytope");
        let mut tested = 0;
        while tested < 1000 {
            let dim = 2 + (tested % 2);
            let delta = 0.2 + 0.8 * r.gen::<f64>();
            // random halfspaces all containing B(0, delta)
            let k = 4 + (r.gen::<u32>() % 5) as usize;
            let mut hs = Vec::new();
            for _ in 0..k {
                let u: Vec<f64> = (0..dim).map(|_| 2.0 * r.gen::<f64>() - 1.0).collect();
                let norm: f64 = u.iter().map(|x| x * x).sum::<f64>().sqrt();
                if norm < 1e-3 {
                    continue;
                }
                let c = delta * norm + 2.0 * r.gen::<f64>() * norm;
                hs.push((u, c));
            }
            let poly = match HPolytope::new(hs) {
                Ok(p) => p,
                Err(_) => continue,
            };
            assert!(poly.ball_inside(&vec![0.0; dim], delta));
            // a point of the polytope: shrink a random direction until inside
            let mut y: Vec<f64> = (0..dim).map(|_| 6.0 * r.gen::<f64>() - 3.0).collect();
            while !poly.contains(&y, 0.0) {
                for v in &mut y {
                    *v *= 0.7;
                }
            }
            let t: f64 = r.gen();
            let center: Vec<f64> = y.iter().map(|v| t * v).collect();
            assert!(
                poly.ball_inside(&center, (1.0 - t) * delta),
                "B(ty,(1−t)δ) must stay inside"
            );
            tested += 1;
        }
    }

    #[test]
    fn outside_point_gives_separated_balls() {
        // 𝒞 = unit box around the origin, δ = 0.5
        let poly = HPolytope::new(vec![
            (vec![1.0, 0.0], 1.0),
            (vec![-1.0, 0.0], 1.0),
            (vec![0.0, 1.0], 1.0),
            (vec![0.0, -1.0], 1.0),
        ])
        .unwrap();
        let delta = 0.5;
        assert!(poly.ball_inside(&[0.0, 0.0], delta));
        let y = [2.0, 0.3]; // outside
        assert!(!poly.contains(&y, 0.0));
        for &lam in &[1.0, 1.5, 2.0, 4.0] {
            let center: Vec<f64> = y.iter().map(|v| lam * v).collect();
            let radius = (lam - 1.0) * delta;
            assert!(!poly.ball_inside(&center, radius));
            assert!(
                poly.ball_separated(&center, radius),
                "λ = {lam}: ball should avoid the polytope"
            );
        }
        // radius 0 inside
        assert!(poly.ball_inside(&[0.2, -0.1], 0.0));
    }

    #[test]
    fn chebyshev_center_of_a_box() {
        let poly = HPolytope::new(vec![
            (vec![1.0, 0.0], 2.0),
            (vec![-1.0, 0.0], 0.0),
            (vec![0.0, 1.0], 1.0),
            (vec![0.0, -1.0], 1.0),
        ])
        .unwrap();
        let (c, r) = poly.chebyshev_center().unwrap();
        assert!((r - 1.0).abs() < 1e-9);
        assert!((c[0] - 1.0).abs() < 1e-6 && c[1].abs() < 1.0 + 1e-9);
    }
}
