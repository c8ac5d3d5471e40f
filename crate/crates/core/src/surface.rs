//! Quartic surfaces in `P^3`: construction with cached differential data,
//! seeded random generation, and the genericity sweeps (singular points,
//! contained lines) that downstream modules rely on.

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;

use crate::error::{Error, Result};
use crate::point::ProjPoint;
use crate::poly::MultiPoly;
use crate::roots::roots;
use crate::scalar::{Coeff, Rat, C64};
use crate::tol;

/// A quartic surface `F = 0` in `P^3`, with its gradient and Hessian cached.
///
/// The float polynomial drives every numerical routine; when the surface was
/// built from exact data the rational form is kept alongside for exact
/// consumers.  Construction computes the four partials, the 4x4 matrix of
/// second partials, and the degree-8 Hessian determinant once.
#[derive(Debug, Clone)]
pub struct QuarticSurface {
    f: MultiPoly<C64>,
    f_exact: Option<MultiPoly<Rat>>,
    grad: Vec<MultiPoly<C64>>,
    hess: Vec<Vec<MultiPoly<C64>>>,
    hess_det: MultiPoly<C64>,
    seed: Option<u64>,
    special_label: Option<String>,
    smooth_hint: bool,
}

/// Default number of Gauss-Newton starts in the construction-time sweep for
/// singular points.
const SWEEP_STARTS: usize = 32;

impl QuarticSurface {
    /// Wrap a float quartic; runs the singular-point sweep and records the
    /// outcome in [`Self::smooth_hint`].
    pub fn from_poly(f: MultiPoly<C64>) -> Result<Self> {
        Self::build(f, None, None, None)
    }

    /// Wrap an exact quartic, keeping the rational form available.
    pub fn from_exact(f: MultiPoly<Rat>) -> Result<Self> {
        let float = f.to_c64();
        Self::build(float, Some(f), None, None)
    }

    /// Seeded random quartic with integer coefficients uniform in `[-9, 9]`,
    /// resampled until the singular-point sweep comes back empty.
    pub fn random(seed: u64) -> Result<Self> {
        let mut rng = ChaCha20Rng::seed_from_u64(seed);
        for _ in 0..100 {
            let terms: Vec<(Vec<u32>, Rat)> = quartic_exponents()
                .into_iter()
                .filter_map(|e| {
                    let c: i64 = rng.gen_range(-9..=9);
                    (c != 0).then(|| (e, Rat::from_i64(c)))
                })
                .collect();
            if terms.is_empty() {
                continue;
            }
            let f_exact = MultiPoly::new(4, 4, terms)?;
            let candidate = Self::build(f_exact.to_c64(), Some(f_exact), Some(seed), None)?;
            if candidate.smooth_hint {
                return Ok(candidate);
            }
        }
        Err(Error::Degenerate(
            "every random quartic in 100 seeded draws failed the smoothness sweep".into(),
        ))
    }

    /// The diagonal quartic `x0^4 - x1^4 + x2^4 - x3^4`: smooth, but far from
    /// generic — it contains 48 lines.  Useful as a non-generic fixture.
    pub fn fermat_variant() -> Self {
        let signs = [1i64, -1, 1, -1];
        let f_exact = MultiPoly::new(
            4,
            4,
            signs.iter().enumerate().map(|(i, &s)| {
                let mut e = vec![0u32; 4];
                e[i] = 4;
                (e, Rat::from_i64(s))
            }),
        )
        .expect("diagonal quartic is well-formed");
        let mut surface = Self::build(f_exact.to_c64(), Some(f_exact), None, None)
            .expect("diagonal quartic is a valid surface");
        surface.special_label =
            Some("diagonal quartic with signature (+,-,+,-); contains 48 lines".into());
        surface
    }

    fn build(
        f: MultiPoly<C64>,
        f_exact: Option<MultiPoly<Rat>>,
        seed: Option<u64>,
        special_label: Option<String>,
    ) -> Result<Self> {
        if f.num_vars() != 4 {
            return Err(Error::DimensionMismatch(format!(
                "a quartic surface lives in 4 homogeneous variables, got {}",
                f.num_vars()
            )));
        }
        if f.degree() != 4 || f.is_zero() {
            return Err(Error::InvalidPolynomial(
                "a quartic surface needs a nonzero degree-4 form".into(),
            ));
        }
        let grad = f.gradient();
        let hess: Vec<Vec<MultiPoly<C64>>> = grad
            .iter()
            .map(|gi| (0..4).map(|j| gi.derivative(j)).collect())
            .collect();
        let hess_det = f.hessian_det()?;
        let mut surface = Self {
            f,
            f_exact,
            grad,
            hess,
            hess_det,
            seed,
            special_label,
            smooth_hint: false,
        };
        let sweep_seed = seed.unwrap_or(0).wrapping_add(0x5_1ee7);
        surface.smooth_hint = surface
            .smoothness_sweep(sweep_seed, SWEEP_STARTS)
            .is_empty();
        Ok(surface)
    }

    pub fn f(&self) -> &MultiPoly<C64> {
        &self.f
    }

    pub fn f_exact(&self) -> Option<&MultiPoly<Rat>> {
        self.f_exact.as_ref()
    }

    /// The four partial derivatives (the Gauss map's coordinate cubics).
    pub fn grad(&self) -> &[MultiPoly<C64>] {
        &self.grad
    }

    /// The 4x4 matrix of second partials.
    pub fn hess(&self) -> &[Vec<MultiPoly<C64>>] {
        &self.hess
    }

    /// The degree-8 Hessian determinant, whose zero locus cuts the parabolic
    /// curve on the surface.
    pub fn hess_det(&self) -> &MultiPoly<C64> {
        &self.hess_det
    }

    pub fn seed(&self) -> Option<u64> {
        self.seed
    }

    /// Marks built-in fixtures that are knowingly non-generic.
    pub fn special_label(&self) -> Option<&str> {
        self.special_label.as_deref()
    }

    /// `true` when the construction-time sweep found no singular point.
    /// A heuristic in float mode, not a certificate.
    pub fn smooth_hint(&self) -> bool {
        self.smooth_hint
    }

    /// Gradient vector at the normalized representative of `p`.
    pub fn grad_at(&self, p: &ProjPoint<C64>) -> [C64; 4] {
        let q = p.normalized();
        let x = q.coords();
        [
            self.grad[0].eval_coords(x),
            self.grad[1].eval_coords(x),
            self.grad[2].eval_coords(x),
            self.grad[3].eval_coords(x),
        ]
    }

    /// Hessian matrix at the normalized representative of `p`.
    pub fn hess_at(&self, p: &ProjPoint<C64>) -> DMatrix<C64> {
        let q = p.normalized();
        let x = q.coords();
        DMatrix::from_fn(4, 4, |i, j| self.hess[i][j].eval_coords(x))
    }

    /// `|F(p)|` at the normalized representative, relative to the coefficient
    /// scale of `F`.
    pub fn on_surface_residual(&self, p: &ProjPoint<C64>) -> f64 {
        self.f.eval(p).magnitude() / self.f.coeff_l1()
    }

    pub fn contains_point(&self, p: &ProjPoint<C64>) -> bool {
        self.on_surface_residual(p) <= tol::ON_SURFACE_REL
    }

    /// Newton-project a near-miss point onto the surface (single-equation
    /// Newton along the minimal-norm correction).
    pub fn project_to_surface(
        &self,
        p: &ProjPoint<C64>,
        max_steps: usize,
    ) -> Result<ProjPoint<C64>> {
        let mut x: Vec<C64> = p.normalized().coords().to_vec();
        let scale = self.f.coeff_l1();
        for _ in 0..max_steps {
            let v = self.f.eval_coords(&x);
            if v.norm() <= 1e-15 * scale {
                break;
            }
            let g: Vec<C64> = self.grad.iter().map(|gi| gi.eval_coords(&x)).collect();
            let n2: f64 = g.iter().map(|c| c.norm_sqr()).sum();
            if n2 <= 1e-24 * scale * scale {
                return Err(Error::Degenerate(
                    "gradient vanished while projecting onto the surface".into(),
                ));
            }
            for (xi, gi) in x.iter_mut().zip(&g) {
                *xi -= v * gi.conj() / n2;
            }
            let max = x.iter().map(|c| c.norm()).fold(0.0, f64::max);
            for xi in &mut x {
                *xi /= max;
            }
        }
        let projected = ProjPoint::new(x)?.normalized();
        let residual = self.on_surface_residual(&projected);
        if residual <= tol::ON_SURFACE_REL {
            Ok(projected)
        } else {
            Err(Error::OffSurface { residual })
        }
    }

    /// Deterministic sample of `n` points on the surface, harvested from the
    /// roots of random line restrictions.
    pub fn random_points_on_surface(&self, n: usize, seed: u64) -> Result<Vec<ProjPoint<C64>>> {
        let mut rng = ChaCha20Rng::seed_from_u64(seed ^ 0x0d_5eed);
        let mut out = Vec::with_capacity(n);
        for _ in 0..20 * n.max(1) {
            if out.len() >= n {
                break;
            }
            let a = random_complex_point(&mut rng, 4);
            let b = random_complex_point(&mut rng, 4);
            let Ok(restriction) = self.f.restrict_to_line(&a, &b) else {
                continue;
            };
            let trimmed = restriction.trim_relative(1e-12);
            if trimmed.degree() != Some(4) {
                continue;
            }
            let Ok(ts) = roots(&trimmed) else { continue };
            let pa = a.normalized();
            let pb = b.normalized();
            for t in ts {
                if out.len() >= n {
                    break;
                }
                let coords: Vec<C64> = pa
                    .coords()
                    .iter()
                    .zip(pb.coords())
                    .map(|(&ca, &cb)| ca + t * cb)
                    .collect();
                let Ok(raw) = ProjPoint::new(coords) else {
                    continue;
                };
                if let Ok(p) = self.project_to_surface(&raw, 4) {
                    out.push(p);
                }
            }
        }
        if out.len() < n {
            return Err(Error::Degenerate(format!(
                "harvested only {} of {n} requested surface points",
                out.len()
            )));
        }
        Ok(out)
    }

    /// Multi-start Gauss-Newton hunt for points where the whole gradient
    /// vanishes.  Returns every certified singular point (deduplicated);
    /// empty for a surface that looks smooth.
    pub fn smoothness_sweep(&self, seed: u64, starts: usize) -> Vec<ProjPoint<C64>> {
        let mut rng = ChaCha20Rng::seed_from_u64(seed ^ 0x5109_u64);
        let scale = self
            .grad
            .iter()
            .map(|g| g.coeff_l1())
            .fold(0.0f64, f64::max);
        let mut found: Vec<ProjPoint<C64>> = Vec::new();
        for s in 0..starts {
            let chart = s % 4;
            let mut u: Vec<C64> = (0..3)
                .map(|_| C64::new(rng.gen_range(-1.5..1.5), rng.gen_range(-1.5..1.5)))
                .collect();
            let mut best_u = u.clone();
            let mut best_norm = f64::INFINITY;
            let mut stalls = 0;
            for _ in 0..60 {
                let x = embed_chart(chart, &u);
                let r = nalgebra::DVector::from_iterator(
                    4,
                    self.grad.iter().map(|g| g.eval_coords(&x)),
                );
                let rnorm = r.norm();
                if rnorm < best_norm {
                    best_norm = rnorm;
                    best_u = u.clone();
                    stalls = 0;
                } else {
                    stalls += 1;
                    if stalls >= 4 {
                        break;
                    }
                }
                let vars: Vec<usize> = (0..4).filter(|&k| k != chart).collect();
                let j = DMatrix::from_fn(4, 3, |i, m| self.hess[i][vars[m]].eval_coords(&x));
                let jh = j.adjoint();
                let normal = &jh * &j;
                let rhs = &jh * &r;
                let Some(delta) = normal.lu().solve(&rhs) else {
                    break;
                };
                for (ui, d) in u.iter_mut().zip(delta.iter()) {
                    *ui -= d;
                }
                if u.iter().map(|c| c.norm()).fold(0.0, f64::max) > 1e6 {
                    break;
                }
            }
            let x = embed_chart(chart, &best_u);
            let Ok(candidate) = ProjPoint::new(x) else {
                continue;
            };
            let candidate = candidate.normalized();
            let g_inf = self
                .grad_at(&candidate)
                .iter()
                .map(|c| c.norm())
                .fold(0.0, f64::max);
            if g_inf <= tol::SINGULAR_SWEEP_REL * scale
                && !found
                    .iter()
                    .any(|q| q.proj_distance(&candidate) < tol::PROJ_MERGE)
            {
                found.push(candidate);
            }
        }
        found.sort_by(|a, b| a.sort_key().partial_cmp(&b.sort_key()).unwrap());
        found
    }

    /// Multi-start Gauss-Newton hunt for lines contained in the surface.
    /// Returns certified span pairs — empty for a generic quartic, which
    /// contains no lines.
    pub fn contained_lines(
        &self,
        seed: u64,
        starts: usize,
    ) -> Vec<(ProjPoint<C64>, ProjPoint<C64>)> {
        let mut rng = ChaCha20Rng::seed_from_u64(seed ^ 0x11e5_u64);
        // Charts: the two free coordinates (k, l), the two dependent ones
        // expressed as linear functions of them.
        let charts: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
        let samples: [f64; 5] = [-2.0, -1.0, 0.0, 1.0, 2.0];
        let mut found: Vec<(ProjPoint<C64>, ProjPoint<C64>, ProjPoint<C64>)> = Vec::new();
        for s in 0..starts {
            let (k, l) = charts[s % 6];
            let deps: Vec<usize> = (0..4).filter(|&v| v != k && v != l).collect();
            let (i, j) = (deps[0], deps[1]);
            let mut z: Vec<C64> = (0..4)
                .map(|_| C64::new(rng.gen_range(-1.5..1.5), rng.gen_range(-1.5..1.5)))
                .collect();
            let mut best_z = z.clone();
            let mut best_norm = f64::INFINITY;
            let mut stalls = 0;
            for _ in 0..60 {
                let mut r = nalgebra::DVector::from_element(5, C64::new(0.0, 0.0));
                let mut jac = DMatrix::from_element(5, 4, C64::new(0.0, 0.0));
                for (m, &t) in samples.iter().enumerate() {
                    let t = C64::new(t, 0.0);
                    let mut x = [C64::new(0.0, 0.0); 4];
                    x[k] = C64::new(1.0, 0.0);
                    x[l] = t;
                    x[i] = z[0] + z[1] * t;
                    x[j] = z[2] + z[3] * t;
                    r[m] = self.f.eval_coords(&x);
                    let di = self.grad[i].eval_coords(&x);
                    let dj = self.grad[j].eval_coords(&x);
                    jac[(m, 0)] = di;
                    jac[(m, 1)] = di * t;
                    jac[(m, 2)] = dj;
                    jac[(m, 3)] = dj * t;
                }
                let rnorm = r.norm();
                if rnorm < best_norm {
                    best_norm = rnorm;
                    best_z = z.clone();
                    stalls = 0;
                } else {
                    stalls += 1;
                    if stalls >= 4 {
                        break;
                    }
                }
                let jh = jac.adjoint();
                let normal = &jh * &jac;
                let rhs = &jh * &r;
                let Some(delta) = normal.lu().solve(&rhs) else {
                    break;
                };
                for (zi, d) in z.iter_mut().zip(delta.iter()) {
                    *zi -= d;
                }
                if z.iter().map(|c| c.norm()).fold(0.0, f64::max) > 1e6 {
                    break;
                }
            }
            if best_z.iter().map(|c| c.norm()).fold(0.0, f64::max) > 1e4 {
                continue;
            }
            let mut a = [C64::new(0.0, 0.0); 4];
            a[k] = C64::new(1.0, 0.0);
            a[i] = best_z[0];
            a[j] = best_z[2];
            let mut b = [C64::new(0.0, 0.0); 4];
            b[l] = C64::new(1.0, 0.0);
            b[i] = best_z[1];
            b[j] = best_z[3];
            let (Ok(pa), Ok(pb)) = (ProjPoint::new(a.to_vec()), ProjPoint::new(b.to_vec())) else {
                continue;
            };
            let Ok(restriction) = self.f.restrict_to_line(&pa, &pb) else {
                continue;
            };
            let l1: f64 = restriction.coeffs().iter().map(|c| c.norm()).sum();
            if l1 > tol::LINE_IN_SURFACE_REL * self.f.coeff_l1() {
                continue;
            }
            let key = pluecker_point(&pa, &pb);
            let Ok(key) = key else { continue };
            if !found
                .iter()
                .any(|(_, _, existing)| existing.proj_distance(&key) < tol::PROJ_MERGE)
            {
                found.push((pa, pb, key));
            }
        }
        found.sort_by(|x, y| x.2.sort_key().partial_cmp(&y.2.sort_key()).unwrap());
        found.into_iter().map(|(a, b, _)| (a, b)).collect()
    }
}

/// Wedge of two span points as a point of `P^5` — used only for
/// deduplicating lines; the full line type lives elsewhere.
fn pluecker_point(a: &ProjPoint<C64>, b: &ProjPoint<C64>) -> Result<ProjPoint<C64>> {
    let pa = a.normalized();
    let pb = b.normalized();
    let (x, y) = (pa.coords(), pb.coords());
    let mut w = Vec::with_capacity(6);
    for i in 0..4 {
        for j in (i + 1)..4 {
            w.push(x[i] * y[j] - x[j] * y[i]);
        }
    }
    ProjPoint::new(w)
}

fn embed_chart(chart: usize, u: &[C64]) -> Vec<C64> {
    let mut x = Vec::with_capacity(4);
    let mut it = u.iter();
    for k in 0..4 {
        if k == chart {
            x.push(C64::new(1.0, 0.0));
        } else {
            x.push(*it.next().expect("three affine coordinates"));
        }
    }
    x
}

fn random_complex_point(rng: &mut ChaCha20Rng, n: usize) -> ProjPoint<C64> {
    loop {
        let coords: Vec<C64> = (0..n)
            .map(|_| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        if let Ok(p) = ProjPoint::new(coords) {
            return p;
        }
    }
}

/// All 35 exponent vectors of total degree 4 in 4 variables, in a fixed
/// lexicographic order (the random generator's draw order depends on it).
fn quartic_exponents() -> Vec<Vec<u32>> {
    let mut out = Vec::with_capacity(35);
    for e0 in 0..=4u32 {
        for e1 in 0..=(4 - e0) {
            for e2 in 0..=(4 - e0 - e1) {
                out.push(vec![e0, e1, e2, 4 - e0 - e1 - e2]);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diag_plus(coeffs: [i64; 4]) -> MultiPoly<C64> {
        MultiPoly::new(
            4,
            4,
            coeffs
                .iter()
                .enumerate()
                .filter(|(_, &c)| c != 0)
                .map(|(i, &c)| {
                    let mut e = vec![0u32; 4];
                    e[i] = 4;
                    (e, C64::new(c as f64, 0.0))
                }),
        )
        .unwrap()
    }

    #[test]
    fn random_generation_is_deterministic() {
        let a = QuarticSurface::random(42).unwrap();
        let b = QuarticSurface::random(42).unwrap();
        let ta: Vec<_> = a.f().terms().map(|(e, c)| (e.to_vec(), *c)).collect();
        let tb: Vec<_> = b.f().terms().map(|(e, c)| (e.to_vec(), *c)).collect();
        assert_eq!(ta, tb);
        assert!(a.smooth_hint());
        assert!(a.f_exact().is_some());
        let c = QuarticSurface::random(43).unwrap();
        let tc: Vec<_> = c.f().terms().map(|(e, c)| (e.to_vec(), *c)).collect();
        assert_ne!(ta, tc);
    }

    #[test]
    fn cone_over_a_plane_quartic_is_flagged_singular() {
        // x0^4 + x1^4 + x2^4 has a singular apex at (0:0:0:1).
        let cone = diag_plus([1, 1, 1, 0]);
        let surface = QuarticSurface::from_poly(cone).unwrap();
        assert!(!surface.smooth_hint());
        let apex = ProjPoint::from_reals(&[0.0, 0.0, 0.0, 1.0]).unwrap();
        let found = surface.smoothness_sweep(5, SWEEP_STARTS);
        assert!(found.iter().any(|p| p.proj_distance(&apex) < 1e-6));
    }

    #[test]
    fn nodal_diagonal_perturbation_is_flagged_singular() {
        // sum x_i^4 - 4 x0 x1 x2 x3 is singular at (1:1:1:1) and its
        // even-sign-flip orbit.
        let mut terms: Vec<(Vec<u32>, C64)> = (0..4)
            .map(|i| {
                let mut e = vec![0u32; 4];
                e[i] = 4;
                (e, C64::new(1.0, 0.0))
            })
            .collect();
        terms.push((vec![1, 1, 1, 1], C64::new(-4.0, 0.0)));
        let f = MultiPoly::new(4, 4, terms).unwrap();
        let surface = QuarticSurface::from_poly(f).unwrap();
        assert!(!surface.smooth_hint());
        let node = ProjPoint::from_reals(&[1.0, 1.0, 1.0, 1.0]).unwrap();
        let found = surface.smoothness_sweep(5, 64);
        assert!(found.iter().any(|p| p.proj_distance(&node) < 1e-6));
    }

    #[test]
    fn diagonal_fixture_is_smooth_but_contains_lines() {
        let surface = QuarticSurface::fermat_variant();
        assert!(surface.smooth_hint());
        assert!(surface.special_label().is_some());
        let lines = surface.contained_lines(3, 96);
        assert!(!lines.is_empty(), "the diagonal quartic contains lines");
        for (a, b) in &lines {
            let restriction = surface.f().restrict_to_line(a, b).unwrap();
            let l1: f64 = restriction.coeffs().iter().map(|c| c.norm()).sum();
            assert!(l1 <= tol::LINE_IN_SURFACE_REL * surface.f().coeff_l1());
        }
    }

    #[test]
    fn random_surface_contains_no_lines() {
        let surface = QuarticSurface::random(42).unwrap();
        assert!(surface.contained_lines(9, 48).is_empty());
    }

    #[test]
    fn harvested_points_lie_on_the_surface() {
        let surface = QuarticSurface::random(42).unwrap();
        let points = surface.random_points_on_surface(8, 1).unwrap();
        assert_eq!(points.len(), 8);
        for p in &points {
            assert!(surface.on_surface_residual(p) < 1e-12);
            // Euler pairing: grad(p) . p = 4 F(p) = 0.
            let g = surface.grad_at(p);
            let q = p.normalized();
            let pairing: C64 = g.iter().zip(q.coords()).map(|(gi, xi)| gi * xi).sum();
            let scale: f64 = g.iter().map(|c| c.norm()).sum::<f64>().max(1e-300);
            assert!(pairing.norm() / scale < 1e-10);
        }
        // Determinism.
        let again = surface.random_points_on_surface(8, 1).unwrap();
        for (p, q) in points.iter().zip(&again) {
            assert!(p.proj_distance(q) == 0.0);
        }
    }

    #[test]
    fn projection_recovers_a_perturbed_point() {
        let surface = QuarticSurface::random(7).unwrap();
        let p = surface.random_points_on_surface(1, 2).unwrap().remove(0);
        let mut coords = p.normalized().coords().to_vec();
        coords[0] += C64::new(1e-5, -2e-5);
        let nudged = ProjPoint::new(coords).unwrap();
        let back = surface.project_to_surface(&nudged, 8).unwrap();
        assert!(surface.on_surface_residual(&back) < 1e-12);
        assert!(back.proj_distance(&p) < 1e-3);
    }

    #[test]
    fn constructors_reject_malformed_input() {
        let ternary = MultiPoly::new(3, 4, [(vec![4, 0, 0], C64::new(1.0, 0.0))]).unwrap();
        assert!(matches!(
            QuarticSurface::from_poly(ternary),
            Err(Error::DimensionMismatch(_))
        ));
        let cubic = MultiPoly::new(4, 3, [(vec![3, 0, 0, 0], C64::new(1.0, 0.0))]).unwrap();
        assert!(matches!(
            QuarticSurface::from_poly(cubic),
            Err(Error::InvalidPolynomial(_))
        ));
    }

    #[test]
    fn hessian_determinant_has_degree_eight() {
        let surface = QuarticSurface::random(42).unwrap();
        assert_eq!(surface.hess_det().degree(), 8);
        assert!(!surface.hess_det().is_zero());
    }
}
