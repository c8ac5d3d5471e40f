//! Simultaneous solution of two polynomial equations in two complex
//! variables.
//!
//! Two independent routes feed one candidate pool:
//!
//! * **Elimination.** The resultant with respect to `y` is a univariate
//!   polynomial in `x` whose roots carry every solution's `x`-coordinate.
//!   Rather than expanding it symbolically, the Sylvester determinant is
//!   evaluated at scaled roots of unity and the coefficients are recovered
//!   by an inverse discrete Fourier transform; `y` is then matched by
//!   comparing the two univariate slices at each candidate `x`.
//! * **Multi-start Newton.** Damped-free Newton iteration from seeded random
//!   starting points, which also catches roots the interpolated resultant
//!   lost to roundoff in its extreme coefficients.
//!
//! Every candidate is polished by the same two-dimensional Newton iteration
//! and deduplicated; when two polished points fall inside one deduplication
//! ball yet stay measurably apart, the survivor is flagged so callers can
//! treat the local count with care (a tangential intersection looks exactly
//! like that).

use crate::error::{Error, Result};
use crate::poly::BiPoly;
use crate::poly::UniPoly;
use crate::roots::{roots, roots_with_multiplicity};
use crate::scalar::C64;
use crate::tol;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;

/// One isolated common zero of the input pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BivarSolution {
    pub x: C64,
    pub y: C64,
    /// Largest relative residual of the two equations at `(x, y)`.
    pub residual: f64,
    /// Set when distinct polished candidates shared this solution's
    /// deduplication ball: either a genuine near-double point or two
    /// solutions too close to separate at working precision.
    pub cluster_ambiguous: bool,
}

/// Knobs for [`solve_bivariate`]; the defaults suit systems of total degree
/// up to roughly twenty per equation.
#[derive(Debug, Clone, Copy)]
pub struct BivarOptions {
    /// Seeds the Newton starting points and the sampling-circle phase.
    pub seed: u64,
    /// Number of random Newton starting points.
    pub newton_starts: usize,
    /// Candidates above this relative residual are discarded after polish.
    pub keep_residual: f64,
    /// Relative distance under which two polished solutions merge.
    pub dedupe_tol: f64,
}

impl Default for BivarOptions {
    fn default() -> Self {
        BivarOptions {
            seed: 0x0b1_7a96e47,
            newton_starts: 48,
            keep_residual: 1e-6,
            dedupe_tol: tol::SOLUTION_DEDUP,
        }
    }
}

/// All isolated common zeros of `f` and `g`, or [`Error::CommonFactor`] when
/// the pair shares a curve of solutions and counting is meaningless.
///
/// Output order is deterministic (lexicographic on coordinates) and the
/// whole computation is a pure function of the inputs and `options.seed`.
pub fn solve_bivariate(
    f: &BiPoly<C64>,
    g: &BiPoly<C64>,
    options: &BivarOptions,
) -> Result<Vec<BivarSolution>> {
    if f.is_zero() || g.is_zero() {
        return Err(Error::InvalidPolynomial(
            "cannot intersect with the zero polynomial".into(),
        ));
    }
    // Elimination needs a `y`-degree to eliminate; swapping the roles of the
    // two equations changes nothing else.
    let (f, g) = if f.deg_y().unwrap_or(0) == 0 && g.deg_y().unwrap_or(0) >= 1 {
        (g, f)
    } else {
        (f, g)
    };
    if f.deg_y().unwrap_or(0) == 0 {
        return Err(Error::Degenerate(
            "both equations are univariate in the first variable".into(),
        ));
    }

    let mut rng = ChaCha20Rng::seed_from_u64(options.seed);
    let mut candidates: Vec<(C64, C64)> = Vec::new();

    match eliminate_y(f, g, &mut rng)? {
        Some(resultant) => {
            let x_candidates = roots_with_multiplicity(&resultant, 1e-9).unwrap_or_default();
            for (x0, _) in x_candidates {
                // Tiny leading dust in the interpolated resultant produces
                // enormous junk roots whose slice evaluations overflow.
                if !x0.is_finite() || x0.norm() > 1e8 {
                    continue;
                }
                candidates.extend(match_y_at(f, g, x0));
            }
        }
        None => {
            // Resultant numerically vanished everywhere without a confirmed
            // common factor: fall through to the Newton route alone.
        }
    }

    // Multi-start Newton: half the starts in a unit-scale disk, half spread
    // wider to catch solutions in the outer reaches of the chart.
    for k in 0..options.newton_starts {
        let radius = if k % 2 == 0 { 2.0 } else { 10.0 };
        let x0 = C64::new(
            rng.gen_range(-radius..radius),
            rng.gen_range(-radius..radius),
        );
        let y0 = C64::new(
            rng.gen_range(-radius..radius),
            rng.gen_range(-radius..radius),
        );
        if let Some((x, y, _)) = newton_refine(f, g, x0, y0, 60) {
            candidates.push((x, y));
        }
    }

    // Polish everything with the same iteration, then keep what genuinely
    // solves the system.
    let mut polished: Vec<(C64, C64, f64)> = Vec::new();
    for (x0, y0) in candidates {
        let (x, y, residual) = match newton_refine(f, g, x0, y0, 40) {
            Some(hit) => hit,
            None => {
                let residual = pair_residual(f, g, x0, y0);
                (x0, y0, residual)
            }
        };
        if residual <= options.keep_residual {
            polished.push((x, y, residual));
        }
    }

    Ok(dedupe(polished, options.dedupe_tol))
}

/// A handful of damped-free Newton steps on the pair, returning the best
/// visited point and its relative residual, or `None` when the iteration
/// escaped to infinity.
pub fn newton_refine(
    f: &BiPoly<C64>,
    g: &BiPoly<C64>,
    mut x: C64,
    mut y: C64,
    max_steps: usize,
) -> Option<(C64, C64, f64)> {
    let fx = f.partial_x();
    let fy = f.partial_y();
    let gx = g.partial_x();
    let gy = g.partial_y();

    // Multiple solutions demand pressing past the usual tolerance: Newton
    // converges linearly there, and stopping at a residual of 1e-12 would
    // leave ~1e-6 of coordinate scatter on a double point — far wider than
    // the deduplication ball.  Iterating to the residual floor brings the
    // scatter down to ~1e-8.
    let mut best = (x, y, pair_residual(f, g, x, y));
    let mut stalled = 0;
    for _ in 0..max_steps {
        let fv = f.eval(&x, &y);
        let gv = g.eval(&x, &y);
        let j00 = fx.eval(&x, &y);
        let j01 = fy.eval(&x, &y);
        let j10 = gx.eval(&x, &y);
        let j11 = gy.eval(&x, &y);
        let det = j00 * j11 - j01 * j10;
        if det.norm() < 1e-300 {
            break;
        }
        let dx = (fv * j11 - gv * j01) / det;
        let dy = (gv * j00 - fv * j10) / det;
        x -= dx;
        y -= dy;
        if !x.is_finite() || !y.is_finite() || x.norm() > 1e9 || y.norm() > 1e9 {
            return None;
        }
        let residual = pair_residual(f, g, x, y);
        if residual < best.2 {
            best = (x, y, residual);
            stalled = 0;
        } else {
            stalled += 1;
            if stalled >= 4 {
                break;
            }
        }
    }
    Some(best)
}

/// Largest relative residual of the two equations at `(x, y)`.
pub fn pair_residual(f: &BiPoly<C64>, g: &BiPoly<C64>, x: C64, y: C64) -> f64 {
    let rf = f.eval(&x, &y).norm() / f.value_scale(&x, &y);
    let rg = g.eval(&x, &y).norm() / g.value_scale(&x, &y);
    rf.max(rg)
}

/// The resultant of `f` and `g` with respect to `y`, interpolated from
/// Sylvester determinants at scaled roots of unity.
///
/// Returns `Ok(None)` when every sample is negligible but no common factor
/// could be confirmed, and [`Error::CommonFactor`] when the shared-component
/// test at random slices succeeds.
fn eliminate_y(
    f: &BiPoly<C64>,
    g: &BiPoly<C64>,
    rng: &mut ChaCha20Rng,
) -> Result<Option<UniPoly<C64>>> {
    let m = f.deg_y().unwrap_or(0) as usize;
    let n = g.deg_y().unwrap_or(0) as usize;
    let dxf = f.deg_x().unwrap_or(0) as usize;
    let dxg = g.deg_x().unwrap_or(0) as usize;

    // Each f-row of the Sylvester matrix contributes x-degree at most dxf
    // and appears n times (likewise for g), bounding the resultant degree.
    let bound = n * dxf + m * dxg;
    let nodes = bound + 1;
    let radius = 1.3;
    let phase = 0.25 + 0.5 * rng.gen_range(0.0..1.0);

    let mut values = Vec::with_capacity(nodes);
    let mut hadamard_max: f64 = 0.0;
    for s in 0..nodes {
        let angle = 2.0 * std::f64::consts::PI * s as f64 / nodes as f64 + phase;
        let x = C64::from_polar(radius, angle);
        let fc = padded_y_coeffs(f, x, m);
        let gc = padded_y_coeffs(g, x, n);
        let matrix = sylvester_scalar(&fc, &gc);
        hadamard_max = hadamard_max.max(hadamard_scale(&matrix));
        values.push(lu_det(matrix));
    }

    // A Hadamard product overshoots the determinant scale by an enormous
    // factor once the matrix grows past a handful of rows, so a small
    // peak/Hadamard ratio is only a hint, never a verdict.  The random-slice
    // test is decisive for a genuine common factor; failing that, the sampled
    // values are trusted and interpolation proceeds.
    let peak = values.iter().map(|v| v.norm()).fold(0.0, f64::max);
    if peak <= 1e-10 * hadamard_max {
        if confirm_common_factor(f, g, rng) {
            return Err(Error::CommonFactor);
        }
        if peak == 0.0 {
            return Ok(None);
        }
    }

    // Inverse DFT, undoing the radius/phase scaling of the nodes and
    // normalising by the peak so the coefficients sit near unit scale.
    let nf = nodes as f64;
    let mut coeffs = Vec::with_capacity(nodes);
    for k in 0..nodes {
        let mut acc = C64::new(0.0, 0.0);
        for (s, v) in values.iter().enumerate() {
            let angle = -2.0 * std::f64::consts::PI * (k * s) as f64 / nf;
            acc += (v / peak) * C64::from_polar(1.0, angle);
        }
        let node_power = C64::from_polar(radius.powi(k as i32), phase * k as f64);
        coeffs.push(acc / nf / node_power);
    }
    let resultant = UniPoly::new(coeffs).trim_relative(1e-11);
    if resultant.degree().unwrap_or(0) == 0 {
        return Ok(None);
    }
    Ok(Some(resultant))
}

/// `y`-coefficients of `p` at `x`, padded with zeros to nominal degree
/// `deg`; the padding keeps the Sylvester layout fixed even where the
/// leading coefficient happens to vanish.
fn padded_y_coeffs(p: &BiPoly<C64>, x: C64, deg: usize) -> Vec<C64> {
    let mut fc = p.y_coeffs_at(&x);
    fc.resize(deg + 1, C64::new(0.0, 0.0));
    fc
}

/// Sylvester matrix of two scalar coefficient lists (constant-first, nominal
/// degrees `fc.len()-1` and `gc.len()-1`).
fn sylvester_scalar(fc: &[C64], gc: &[C64]) -> Vec<Vec<C64>> {
    let m = fc.len() - 1;
    let n = gc.len() - 1;
    let size = m + n;
    let mut matrix = vec![vec![C64::new(0.0, 0.0); size]; size];
    for i in 0..n {
        for (k, &c) in fc.iter().enumerate() {
            matrix[i][i + (m - k)] = c;
        }
    }
    for i in 0..m {
        for (k, &c) in gc.iter().enumerate() {
            matrix[n + i][i + (n - k)] = c;
        }
    }
    matrix
}

fn hadamard_scale(matrix: &[Vec<C64>]) -> f64 {
    matrix
        .iter()
        .map(|row| {
            row.iter()
                .map(|c| c.norm_sqr())
                .sum::<f64>()
                .sqrt()
                .max(1e-300)
        })
        .product()
}

fn lu_det(mut a: Vec<Vec<C64>>) -> C64 {
    let n = a.len();
    let mut det = C64::new(1.0, 0.0);
    for k in 0..n {
        let (pivot, magnitude) = (k..n)
            .map(|r| (r, a[r][k].norm()))
            .max_by(|p, q| p.1.partial_cmp(&q.1).unwrap())
            .unwrap();
        if magnitude == 0.0 {
            return C64::new(0.0, 0.0);
        }
        if pivot != k {
            a.swap(pivot, k);
            det = -det;
        }
        det *= a[k][k];
        for r in (k + 1)..n {
            let factor = a[r][k] / a[k][k];
            for c in (k + 1)..n {
                let sub = factor * a[k][c];
                a[r][c] -= sub;
            }
        }
    }
    det
}

/// A factor shared by `f` and `g` with positive `y`-degree forces a common
/// `y`-root over *every* `x`; a coincident root pair at three independent
/// random slices is overwhelming evidence.  Positional coincidence is
/// demanded rather than a small evaluation residual — the latter is too easy
/// to satisfy by accident when the slice coefficients span many orders of
/// magnitude.
fn confirm_common_factor(f: &BiPoly<C64>, g: &BiPoly<C64>, rng: &mut ChaCha20Rng) -> bool {
    for _ in 0..3 {
        let x = C64::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
        let fu = UniPoly::new(f.y_coeffs_at(&x)).trim_relative(1e-12);
        let gu = UniPoly::new(g.y_coeffs_at(&x)).trim_relative(1e-12);
        if fu.degree().unwrap_or(0) == 0 || gu.degree().unwrap_or(0) == 0 {
            return false;
        }
        let Ok(fr) = roots(&fu) else { return false };
        let Ok(gr) = roots(&gu) else { return false };
        let shared = fr
            .iter()
            .any(|a| gr.iter().any(|b| (a - b).norm() <= 1e-6 * (1.0 + a.norm())));
        if !shared {
            return false;
        }
    }
    true
}

/// Candidate `(x0, y)` pairs at a fixed resultant root `x0`: `y`-roots of
/// one slice that reappear (loosely) among the roots of the other.  The
/// final Newton polish arbitrates, so the match here stays permissive.
fn match_y_at(f: &BiPoly<C64>, g: &BiPoly<C64>, x0: C64) -> Vec<(C64, C64)> {
    let fu = UniPoly::new(f.y_coeffs_at(&x0)).trim_relative(1e-10);
    let gu = UniPoly::new(g.y_coeffs_at(&x0)).trim_relative(1e-10);
    let fr = match fu.degree() {
        Some(d) if d >= 1 => roots(&fu).unwrap_or_default(),
        _ => Vec::new(),
    };
    let gr = match gu.degree() {
        Some(d) if d >= 1 => roots(&gu).unwrap_or_default(),
        _ => Vec::new(),
    };
    if fr.is_empty() || gr.is_empty() {
        return Vec::new();
    }
    let mut out = Vec::new();
    for &yf in &fr {
        let nearest = gr
            .iter()
            .map(|&yg| (yf - yg).norm())
            .fold(f64::INFINITY, f64::min);
        // Permissive on purpose: a resultant root of multiplicity m is
        // recovered with an error like noise^(1/m), and the slice roots
        // inherit that error.  Random root pairs almost never fall this
        // close, and the final polish discards anything that does not
        // actually solve the pair.
        if nearest <= 2e-2 * f64::max(1.0, yf.norm()) {
            out.push((x0, yf));
        }
    }
    out
}

fn dedupe(mut polished: Vec<(C64, C64, f64)>, dedupe_tol: f64) -> Vec<BivarSolution> {
    // Representatives keep the best residual of their group; a group whose
    // members stay measurably apart is marked ambiguous.
    polished.sort_by(|a, b| a.2.partial_cmp(&b.2).unwrap());
    let mut groups: Vec<(C64, C64, f64, bool)> = Vec::new();
    for (x, y, residual) in polished {
        let mut merged = false;
        for group in groups.iter_mut() {
            let scale = [1.0, x.norm(), y.norm(), group.0.norm(), group.1.norm()]
                .into_iter()
                .fold(1.0, f64::max);
            let dist = ((x - group.0).norm_sqr() + (y - group.1).norm_sqr()).sqrt();
            if dist <= dedupe_tol * scale {
                if dist > 1e-11 * scale {
                    group.3 = true;
                }
                merged = true;
                break;
            }
        }
        if !merged {
            groups.push((x, y, residual, false));
        }
    }
    let mut solutions: Vec<BivarSolution> = groups
        .into_iter()
        .map(|(x, y, residual, cluster_ambiguous)| BivarSolution {
            x,
            y,
            residual,
            cluster_ambiguous,
        })
        .collect();
    solutions.sort_by(|a, b| {
        (a.x.re, a.x.im, a.y.re, a.y.im)
            .partial_cmp(&(b.x.re, b.x.im, b.y.re, b.y.im))
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    solutions
}

#[cfg(test)]
mod tests {
    use super::*;

    fn real_bipoly(terms: &[(u32, u32, f64)]) -> BiPoly<C64> {
        BiPoly::from_terms(terms.iter().map(|&(i, j, c)| (i, j, C64::new(c, 0.0))))
    }

    #[test]
    fn circle_meets_line() {
        // x^2 + y^2 - 1 = 0, x - y = 0.
        let f = real_bipoly(&[(2, 0, 1.0), (0, 2, 1.0), (0, 0, -1.0)]);
        let g = real_bipoly(&[(1, 0, 1.0), (0, 1, -1.0)]);
        let sols = solve_bivariate(&f, &g, &BivarOptions::default()).unwrap();
        assert_eq!(sols.len(), 2);
        let r = std::f64::consts::FRAC_1_SQRT_2;
        assert!((sols[0].x - C64::new(-r, 0.0)).norm() < 1e-12);
        assert!((sols[1].x - C64::new(r, 0.0)).norm() < 1e-12);
        for s in &sols {
            assert!((s.x - s.y).norm() < 1e-12);
            assert!(s.residual < 1e-12);
            assert!(!s.cluster_ambiguous);
        }
    }

    #[test]
    fn hyperbola_meets_line_exactly() {
        // y^2 - x^2 - 1 = 0, y - 2x = 0  =>  3x^2 = 1.
        let f = real_bipoly(&[(0, 2, 1.0), (2, 0, -1.0), (0, 0, -1.0)]);
        let g = real_bipoly(&[(0, 1, 1.0), (1, 0, -2.0)]);
        let sols = solve_bivariate(&f, &g, &BivarOptions::default()).unwrap();
        assert_eq!(sols.len(), 2);
        let x = (1.0f64 / 3.0).sqrt();
        assert!((sols[1].x - C64::new(x, 0.0)).norm() < 1e-12);
        assert!((sols[1].y - C64::new(2.0 * x, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn two_generic_conics_give_four_points() {
        let f = real_bipoly(&[(2, 0, 1.0), (0, 2, 2.0), (1, 1, -1.0), (0, 0, -3.0)]);
        let g = real_bipoly(&[(2, 0, 2.0), (0, 2, -1.0), (1, 0, 1.0), (0, 0, -1.0)]);
        let sols = solve_bivariate(&f, &g, &BivarOptions::default()).unwrap();
        assert_eq!(sols.len(), 4);
        for s in &sols {
            assert!(s.residual < 1e-11, "residual {}", s.residual);
        }
    }

    #[test]
    fn tangential_contact_merges_to_one_point() {
        // The parabola y = x^2 against its tangent y = 0: one doubled
        // solution at the origin, reported once.
        let f = real_bipoly(&[(0, 1, 1.0), (2, 0, -1.0)]);
        let g = real_bipoly(&[(0, 1, 1.0)]);
        let sols = solve_bivariate(&f, &g, &BivarOptions::default()).unwrap();
        assert_eq!(sols.len(), 1);
        assert!(sols[0].x.norm() < 1e-6);
        assert!(sols[0].y.norm() < 1e-10);
    }

    #[test]
    fn shared_line_is_reported_as_common_factor() {
        // Both curves contain the line x + y = 0.
        let shared = real_bipoly(&[(1, 0, 1.0), (0, 1, 1.0)]);
        let f = shared.mul(&real_bipoly(&[(1, 0, 1.0), (0, 1, -1.0), (0, 0, 1.0)]));
        let g = shared.mul(&real_bipoly(&[(1, 0, 1.0), (0, 1, 3.0), (0, 0, -2.0)]));
        let err = solve_bivariate(&f, &g, &BivarOptions::default()).unwrap_err();
        assert!(matches!(err, Error::CommonFactor));
    }

    #[test]
    fn bezout_count_for_cubic_against_quartic() {
        // Products of affine-generic lines: every pairwise crossing is a
        // solution, so the count must be exactly 3 x 4 = 12.
        let lines_f = [
            real_bipoly(&[(0, 1, 1.0), (1, 0, -1.0), (0, 0, 0.3)]),
            real_bipoly(&[(0, 1, 1.0), (1, 0, 0.5), (0, 0, -1.1)]),
            real_bipoly(&[(0, 1, 1.0), (1, 0, 2.0), (0, 0, 0.7)]),
        ];
        let lines_g = [
            real_bipoly(&[(0, 1, 1.0), (1, 0, -2.5), (0, 0, 0.2)]),
            real_bipoly(&[(0, 1, 1.0), (1, 0, 3.0), (0, 0, -0.4)]),
            real_bipoly(&[(0, 1, 1.0), (1, 0, -0.25), (0, 0, 1.9)]),
            real_bipoly(&[(0, 1, 1.0), (1, 0, 1.5), (0, 0, 2.3)]),
        ];
        let f = lines_f
            .iter()
            .fold(BiPoly::constant(C64::new(1.0, 0.0)), |acc, l| acc.mul(l));
        let g = lines_g
            .iter()
            .fold(BiPoly::constant(C64::new(1.0, 0.0)), |acc, l| acc.mul(l));
        let sols = solve_bivariate(&f, &g, &BivarOptions::default()).unwrap();
        assert_eq!(sols.len(), 12);
        for s in &sols {
            assert!(s.residual < 1e-9);
        }
    }

    #[test]
    fn same_seed_reproduces_bitwise_output() {
        let f = real_bipoly(&[(2, 0, 1.0), (0, 2, 2.0), (1, 1, -1.0), (0, 0, -3.0)]);
        let g = real_bipoly(&[(2, 0, 2.0), (0, 2, -1.0), (1, 0, 1.0), (0, 0, -1.0)]);
        let a = solve_bivariate(&f, &g, &BivarOptions::default()).unwrap();
        let b = solve_bivariate(&f, &g, &BivarOptions::default()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn complex_coefficients_are_handled() {
        // (y - i x)(y + i x) = y^2 + x^2 intersected with y - x - 1.
        let f = real_bipoly(&[(0, 2, 1.0), (2, 0, 1.0)]);
        let g = real_bipoly(&[(0, 1, 1.0), (1, 0, -1.0), (0, 0, -1.0)]);
        let sols = solve_bivariate(&f, &g, &BivarOptions::default()).unwrap();
        assert_eq!(sols.len(), 2);
        for s in &sols {
            // Solutions of x^2 + (x+1)^2 = 0 are complex conjugates.
            assert!(s.x.im.abs() > 0.4);
            assert!(s.residual < 1e-12);
        }
    }
}
