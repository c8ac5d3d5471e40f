//! Classification of plane-curve singularities.
//!
//! The classifier reads a curve germ at a point: dehomogenize in the chart
//! of the point's largest coordinate, translate the point to the origin, and
//! inspect the low-order jets.  Double points split by the discriminant of
//! the quadratic jet; when that degenerates, a linear change of coordinates
//! straightens the doubled tangent and a power-series square completion
//! reads off the contact order (cusp, tacnode, or worse).  Triple points
//! split by the discriminant of the cubic jet.
//!
//! The same machinery powers [`section_profile`], which assembles the full
//! singularity list of a plane quartic, its (virtual) genus `3 - sum(delta)`,
//! and two sampling-based sanity hints: whether the curve looks reduced
//! (squarefree line sections) and whether it looks irreducible (no line or
//! conic component absorbs a fixed share of randomly sampled points).

use crate::bivar::{solve_bivariate, BivarOptions};
use crate::error::{Error, Result};
use crate::point::ProjPoint;
use crate::poly::{BiPoly, MultiPoly, UniPoly};
use crate::roots::{roots, roots_with_multiplicity};
use crate::scalar::C64;
use crate::tol;
use nalgebra::DMatrix;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;

/// Analytic type of a plane-curve germ, limited to the cases a quartic
/// section of a smooth surface can show plus a catch-all.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SingularityType {
    /// Multiplicity one: not singular at all.
    Smooth,
    /// Ordinary double point with two distinct tangents.
    Node,
    /// Double point with one tangent and contact order three.
    Cusp,
    /// Double point with one tangent and contact order four: two smooth
    /// branches touching to order two.
    Tacnode,
    /// Triple point with three distinct tangents.
    OrdinaryTriple,
    /// Anything beyond the list above, with a short reason.
    Degenerate(String),
}

impl SingularityType {
    /// Delta invariant (local drop of the geometric genus); `None` when the
    /// germ was not pinned down.
    pub fn delta(&self) -> Option<usize> {
        match self {
            SingularityType::Smooth => Some(0),
            SingularityType::Node | SingularityType::Cusp => Some(1),
            SingularityType::Tacnode => Some(2),
            SingularityType::OrdinaryTriple => Some(3),
            SingularityType::Degenerate(_) => None,
        }
    }
}

impl std::fmt::Display for SingularityType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SingularityType::Smooth => write!(f, "smooth"),
            SingularityType::Node => write!(f, "node"),
            SingularityType::Cusp => write!(f, "cusp"),
            SingularityType::Tacnode => write!(f, "tacnode"),
            SingularityType::OrdinaryTriple => write!(f, "ordinary triple point"),
            SingularityType::Degenerate(reason) => write!(f, "degenerate ({reason})"),
        }
    }
}

/// Everything the germ analysis determined at one point.
#[derive(Debug, Clone)]
pub struct SingularityReport {
    pub kind: SingularityType,
    /// Order of the lowest nonvanishing jet.
    pub multiplicity: usize,
    /// Delta invariant, when the type determines it.
    pub delta: Option<usize>,
    /// Tangent-cone directions with multiplicities; each direction `w` spans
    /// the tangent line together with the base point.
    pub tangent_cone: Vec<(ProjPoint<C64>, usize)>,
}

/// Profile of a plane quartic: singularities, genus bookkeeping, and
/// sampling hints about its component structure.
#[derive(Debug, Clone)]
pub struct SectionProfile {
    pub singularities: Vec<(ProjPoint<C64>, SingularityReport)>,
    /// `3 - sum(delta)`; `None` when any germ stayed unclassified or the
    /// curve is not reduced.  Negative values betray a reducible curve.
    pub genus: Option<i64>,
    /// `Some(false)` when a line or conic component was detected by point
    /// sampling, `Some(true)` when nothing was found with a healthy sample,
    /// `None` when sampling was too thin (or the curve is non-reduced).
    pub irreducible_hint: Option<bool>,
    /// `false` when random line sections consistently have vanishing
    /// discriminant, i.e. the quartic has a repeated component.
    pub reduced_hint: bool,
}

/// Classify the germ of `curve` (a ternary form) at `point`.
///
/// The point must lie on the curve to working precision and be accurate to
/// much better than [`tol::GERM_COEFF_REL`]; polished solver output and
/// exactly-constructed fixtures both qualify.
pub fn classify_singularity(
    curve: &MultiPoly<C64>,
    point: &ProjPoint<C64>,
) -> Result<SingularityReport> {
    if curve.num_vars() != 3 {
        return Err(Error::DimensionMismatch(
            "singularity analysis expects a ternary form".into(),
        ));
    }
    if curve.is_zero() {
        return Err(Error::InvalidPolynomial(
            "cannot classify points of the zero curve".into(),
        ));
    }

    let normalized = point.normalized();
    let pc = normalized.coords().to_vec();
    let chart = (0..3)
        .max_by(|&a, &b| pc[a].norm().partial_cmp(&pc[b].norm()).unwrap())
        .unwrap();
    let slots: Vec<usize> = (0..3).filter(|&k| k != chart).collect();
    let (a, b) = (pc[slots[0]], pc[slots[1]]);

    let affine = curve.dehomogenize(chart);
    let shift_x = BiPoly::from_terms([(1, 0, C64::new(1.0, 0.0)), (0, 0, a)]);
    let shift_y = BiPoly::from_terms([(0, 1, C64::new(1.0, 0.0)), (0, 0, b)]);
    let germ = affine.subst(&shift_x, &shift_y, None);

    let scale = germ.norm_inf();
    let threshold = tol::GERM_COEFF_REL * scale;
    let multiplicity = germ
        .terms()
        .filter(|(_, c)| c.norm() > threshold)
        .map(|((i, j), _)| (i + j) as usize)
        .min()
        .unwrap_or(usize::MAX);

    if multiplicity == usize::MAX {
        return Err(Error::InvalidPolynomial(
            "germ vanishes identically at working precision".into(),
        ));
    }
    if multiplicity == 0 {
        return Err(Error::OffSurface {
            residual: germ.coeff(0, 0).norm() / scale,
        });
    }

    let jet = |i: u32, j: u32| germ.coeff(i, j);
    let direction_point = |du: C64, dv: C64| -> ProjPoint<C64> {
        let mut w = vec![C64::new(0.0, 0.0); 3];
        w[slots[0]] = du;
        w[slots[1]] = dv;
        ProjPoint::new(w).expect("tangent direction is nonzero")
    };

    let kind = match multiplicity {
        1 => SingularityType::Smooth,
        2 => classify_double_point(&germ, threshold, scale),
        3 => {
            // Binary cubic discriminant on the degree-three jet.
            let (a3, b3, c3, d3) = (jet(3, 0), jet(2, 1), jet(1, 2), jet(0, 3));
            let disc = 18.0 * a3 * b3 * c3 * d3 - 4.0 * b3 * b3 * b3 * d3 + b3 * b3 * c3 * c3
                - 4.0 * a3 * c3 * c3 * c3
                - 27.0 * a3 * a3 * d3 * d3;
            let s3 = [a3, b3, c3, d3]
                .iter()
                .map(|c| c.norm())
                .fold(0.0, f64::max);
            if disc.norm() > tol::GERM_COEFF_REL * s3.powi(4) {
                SingularityType::OrdinaryTriple
            } else {
                SingularityType::Degenerate("triple point with coincident tangents".into())
            }
        }
        m => SingularityType::Degenerate(format!("multiplicity {m}")),
    };

    let m = multiplicity as u32;
    let form: Vec<C64> = (0..=m).map(|k| jet(m - k, k)).collect();
    let tangent_cone = binary_form_directions(&form)
        .into_iter()
        .map(|(du, dv, mult)| (direction_point(du, dv), mult))
        .collect();

    let delta = kind.delta();
    Ok(SingularityReport {
        kind,
        multiplicity,
        delta,
        tangent_cone,
    })
}

/// Split a multiplicity-two germ into node / cusp / tacnode / worse.
fn classify_double_point(germ: &BiPoly<C64>, threshold: f64, scale: f64) -> SingularityType {
    let q20 = germ.coeff(2, 0);
    let q11 = germ.coeff(1, 1);
    let q02 = germ.coeff(0, 2);
    let s2 = [q20, q11, q02].iter().map(|c| c.norm()).fold(0.0, f64::max);
    let disc = q11 * q11 - 4.0 * q20 * q02;
    if disc.norm() > tol::GERM_COEFF_REL * s2 * s2 {
        return SingularityType::Node;
    }

    // Square jet.  Work with whichever variable carries the larger square
    // coefficient so the straightening shear has slope at most one.
    let oriented = if q02.norm() >= q20.norm() {
        germ.clone()
    } else {
        let swap_x = BiPoly::from_terms([(0, 1, C64::new(1.0, 0.0))]);
        let swap_y = BiPoly::from_terms([(1, 0, C64::new(1.0, 0.0))]);
        germ.subst(&swap_x, &swap_y, None)
    };
    let c_square = oriented.coeff(0, 2);
    if c_square.norm() <= threshold {
        // The whole quadratic jet sits below noise in both orientations;
        // multiplicity detection already vetoed this, so be conservative.
        return SingularityType::Degenerate("quadratic jet too small to orient".into());
    }
    let slope = -oriented.coeff(1, 1) / (2.0 * c_square);
    let shear_x = BiPoly::from_terms([(1, 0, C64::new(1.0, 0.0))]);
    let shear_y = BiPoly::from_terms([(0, 1, C64::new(1.0, 0.0)), (1, 0, slope)]);
    let straight = oriented.subst(&shear_x, &shear_y, None);

    // straight = c(U) V^2 + b(U) V + a(U) with ord(a) >= 3, ord(b) >= 2 and
    // c a unit; completing the square in V leaves a(U) - b(U)^2 / (4 c(U)),
    // whose order decides the type.  Only the orders-three-and-four
    // coefficients matter for the cases this crate distinguishes.
    let a3 = straight.coeff(3, 0);
    let a4 = straight.coeff(4, 0);
    let b2 = straight.coeff(2, 1);
    let c0 = straight.coeff(0, 2);
    let tilde3 = a3;
    let tilde4 = a4 - b2 * b2 / (4.0 * c0);

    let noise = tol::GERM_COEFF_REL * scale;
    if tilde3.norm() > noise {
        SingularityType::Cusp
    } else if tilde4.norm() > noise {
        SingularityType::Tacnode
    } else {
        SingularityType::Degenerate("contact order exceeds a tacnode".into())
    }
}

/// Directions annihilating a binary form, with multiplicities.
///
/// `form` lists the coefficients of `u^(m-k) v^k` for `k = 0..=m`.  Roots
/// `(1, t)` come from the dehomogenized polynomial; the direction `(0, 1)`
/// absorbs any drop in effective degree.  Directions feed reports and
/// cross-checks, never classification logic, so the generous clustering
/// radius here is harmless.
pub(crate) fn binary_form_directions(form: &[C64]) -> Vec<(C64, C64, usize)> {
    let m = form.len() - 1;
    let poly = UniPoly::new(form.to_vec()).trim_relative(tol::GERM_COEFF_REL);
    let mut out = Vec::new();
    let d = match poly.degree() {
        Some(d) => d,
        None => return out,
    };
    if d < m {
        out.push((C64::new(0.0, 0.0), C64::new(1.0, 0.0), m - d));
    }
    if d >= 1 {
        if let Ok(clusters) = roots_with_multiplicity(&poly, 1e-3) {
            for (t, mult) in clusters {
                out.push((C64::new(1.0, 0.0), t, mult));
            }
        }
    }
    out
}

/// All singular points of a reduced plane curve, found chart by chart as
/// common zeros of two partial derivatives and filtered by the third.
///
/// Fails with [`Error::CommonFactor`] when every chart's partials share a
/// component — the signature of a non-reduced curve.
pub fn singular_points(curve: &MultiPoly<C64>, seed: u64) -> Result<Vec<ProjPoint<C64>>> {
    if curve.num_vars() != 3 {
        return Err(Error::DimensionMismatch(
            "singular point search expects a ternary form".into(),
        ));
    }
    let gradient = curve.gradient();
    let grad_scales: Vec<f64> = gradient.iter().map(|g| g.coeff_l1()).collect();

    let mut found: Vec<ProjPoint<C64>> = Vec::new();
    let mut usable_charts = 0usize;
    let mut shared_factor_charts = 0usize;

    for chart in 0..3 {
        let slots: Vec<usize> = (0..3).filter(|&k| k != chart).collect();
        let gx = gradient[slots[0]].dehomogenize(chart);
        let gy = gradient[slots[1]].dehomogenize(chart);
        if gx.is_zero() || gy.is_zero() {
            continue;
        }
        usable_charts += 1;
        let options = BivarOptions {
            seed: seed ^ (0x9e3779b97f4a7c15u64.wrapping_mul(chart as u64 + 1)),
            ..BivarOptions::default()
        };
        let sols = match solve_bivariate(&gx, &gy, &options) {
            Ok(sols) => sols,
            Err(Error::CommonFactor) => {
                shared_factor_charts += 1;
                continue;
            }
            Err(e) => return Err(e),
        };
        for s in sols {
            // Solutions deep toward chart infinity are re-found accurately
            // in the chart that covers them; keep only the trusty copies.
            if s.x.norm() > 1e4 || s.y.norm() > 1e4 {
                continue;
            }
            let mut coords = vec![C64::new(0.0, 0.0); 3];
            coords[chart] = C64::new(1.0, 0.0);
            coords[slots[0]] = s.x;
            coords[slots[1]] = s.y;
            let p = ProjPoint::new(coords)?.normalized();
            let third = gradient[chart].eval(&p).norm();
            if third > tol::THIRD_PARTIAL_REL * grad_scales[chart] {
                continue;
            }
            if !found.iter().any(|q| q.proj_distance(&p) < tol::PROJ_MERGE) {
                found.push(p);
            }
        }
    }

    if usable_charts == 0 || shared_factor_charts == usable_charts {
        return Err(Error::CommonFactor);
    }
    found.sort_by(|a, b| a.sort_key().partial_cmp(&b.sort_key()).unwrap());
    Ok(found)
}

/// Number of random line sections drawn when sampling curve points; each
/// contributes the four intersection points of the section.
const SAMPLE_LINES: usize = 30;

/// Full singularity/genus/component profile of a plane quartic.
pub fn section_profile(curve: &MultiPoly<C64>, seed: u64) -> Result<SectionProfile> {
    if curve.num_vars() != 3 || curve.degree() != 4 {
        return Err(Error::DimensionMismatch(
            "section profiles are defined for ternary quartics".into(),
        ));
    }
    if curve.is_zero() {
        return Err(Error::InvalidPolynomial(
            "the zero quartic has no profile".into(),
        ));
    }

    let mut rng = ChaCha20Rng::seed_from_u64(seed ^ 0x5ec7_10f1);

    let reduced_hint = reduced_scan(curve, &mut rng)?;
    if !reduced_hint {
        // A repeated component makes both the genus bookkeeping and the
        // irreducibility question ill-posed; report the fact and stop.
        return Ok(SectionProfile {
            singularities: Vec::new(),
            genus: None,
            irreducible_hint: None,
            reduced_hint: false,
        });
    }

    let samples = sample_curve_points(curve, &mut rng);
    let irreducible_hint = component_scan(&samples, &mut rng);

    let mut singularities = Vec::new();
    match singular_points(curve, seed) {
        Ok(points) => {
            for p in points {
                let report = classify_singularity(curve, &p)?;
                singularities.push((p, report));
            }
        }
        Err(Error::CommonFactor) => {
            // The partials share a component although line sections look
            // squarefree; leave the singularity list open rather than guess.
            return Ok(SectionProfile {
                singularities: Vec::new(),
                genus: None,
                irreducible_hint,
                reduced_hint: true,
            });
        }
        Err(e) => return Err(e),
    }

    let genus = singularities
        .iter()
        .try_fold(0i64, |acc, (_, r)| r.delta.map(|d| acc + d as i64))
        .map(|total| 3 - total);

    Ok(SectionProfile {
        singularities,
        genus,
        irreducible_hint,
        reduced_hint: true,
    })
}

/// `false` when three independent random line sections all have vanishing
/// discriminant — the signature of a repeated component.
fn reduced_scan(curve: &MultiPoly<C64>, rng: &mut ChaCha20Rng) -> Result<bool> {
    let mut vanished = 0;
    for _ in 0..3 {
        let restriction = random_line_section(curve, rng)?;
        let (s0, _) = crate::poly::subresultant_pair(&restriction)?;
        let q_norm: f64 = restriction
            .coeffs()
            .iter()
            .map(|c| c.norm_sqr())
            .sum::<f64>()
            .sqrt();
        let d_norm: f64 = restriction
            .derivative()
            .coeffs()
            .iter()
            .map(|c| c.norm_sqr())
            .sum::<f64>()
            .sqrt();
        // Hadamard-style scale of the 7x7 Sylvester determinant: three rows
        // of quartic coefficients, four rows of cubic coefficients.
        let scale = q_norm.powi(3) * d_norm.powi(4);
        if s0.norm() <= 1e-8 * scale {
            vanished += 1;
        }
    }
    Ok(vanished < 3)
}

/// A degree-four restriction of the curve to a seeded random line.
fn random_line_section(curve: &MultiPoly<C64>, rng: &mut ChaCha20Rng) -> Result<UniPoly<C64>> {
    for _ in 0..50 {
        let a = random_proj_point(rng);
        let b = random_proj_point(rng);
        let Ok(restriction) = curve.restrict_to_line(&a, &b) else {
            continue;
        };
        let trimmed = restriction.trim_relative(1e-12);
        if trimmed.degree() == Some(4) {
            return Ok(trimmed);
        }
    }
    Err(Error::Degenerate(
        "no random line met the quartic transversally in fifty draws".into(),
    ))
}

fn random_proj_point(rng: &mut ChaCha20Rng) -> ProjPoint<C64> {
    loop {
        let coords: Vec<C64> = (0..3)
            .map(|_| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        if let Ok(p) = ProjPoint::new(coords) {
            return p;
        }
    }
}

/// Intersection points of the curve with [`SAMPLE_LINES`] random lines.
fn sample_curve_points(curve: &MultiPoly<C64>, rng: &mut ChaCha20Rng) -> Vec<ProjPoint<C64>> {
    let mut points = Vec::new();
    let mut lines = 0;
    let mut attempts = 0;
    while lines < SAMPLE_LINES && attempts < 4 * SAMPLE_LINES {
        attempts += 1;
        let a = random_proj_point(rng);
        let b = random_proj_point(rng);
        let Ok(restriction) = curve.restrict_to_line(&a, &b) else {
            continue;
        };
        let trimmed = restriction.trim_relative(1e-12);
        if trimmed.degree() != Some(4) {
            continue;
        }
        let Ok(ts) = roots(&trimmed) else { continue };
        if ts.len() != 4 {
            continue;
        }
        lines += 1;
        let pa = a.normalized();
        let pb = b.normalized();
        for t in ts {
            let coords: Vec<C64> = pa
                .coords()
                .iter()
                .zip(pb.coords())
                .map(|(&ca, &cb)| ca + t * cb)
                .collect();
            if let Ok(p) = ProjPoint::new(coords) {
                points.push(p.normalized());
            }
        }
    }
    points
}

/// Looks for a line or conic component among sampled curve points.
///
/// A line component absorbs one of the four intersection points of every
/// random line section (a quarter of the sample); a conic absorbs half.  The
/// detectors demand 70% and 140% of the per-line sample count respectively,
/// far above what chance alignment produces and comfortably below the
/// component's share.  A quartic is reducible exactly when it has a
/// component of degree at most two, so these two scans cover every case.
fn component_scan(samples: &[ProjPoint<C64>], rng: &mut ChaCha20Rng) -> Option<bool> {
    if samples.len() < 3 * SAMPLE_LINES {
        return None;
    }
    let coords: Vec<&[C64]> = samples.iter().map(|p| p.coords()).collect();
    let norms: Vec<f64> = coords
        .iter()
        .map(|c| c.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt())
        .collect();

    // Line scan: the join of two points on a line component recovers it.
    let line_need = (0.7 * SAMPLE_LINES as f64).round() as usize;
    let n = samples.len();
    for i in 0..n {
        for j in (i + 1)..n {
            let l = cross3(coords[i], coords[j]);
            let l_norm = l.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            if l_norm < 1e-12 {
                continue;
            }
            let mut inliers = 0;
            for (c, &pn) in coords.iter().zip(&norms) {
                let pairing = c[0] * l[0] + c[1] * l[1] + c[2] * l[2];
                if pairing.norm() < tol::INCIDENCE_REL * pn * l_norm {
                    inliers += 1;
                }
            }
            if inliers >= line_need {
                return Some(false);
            }
        }
    }

    // Conic scan: the conic through five points of a conic component is the
    // component; random five-point draws hit one with decent probability,
    // and three hundred draws make a miss essentially impossible.
    let conic_need = (1.4 * SAMPLE_LINES as f64).round() as usize;
    for _ in 0..300 {
        let mut picks = Vec::with_capacity(5);
        while picks.len() < 5 {
            let k = rng.gen_range(0..n);
            if !picks.contains(&k) {
                picks.push(k);
            }
        }
        let rows = DMatrix::<C64>::from_fn(5, 6, |r, c| {
            let p = coords[picks[r]];
            conic_monomial(p, c)
        });
        // The compact SVD of the 5x6 system omits its kernel, so take the
        // smallest singular direction of the 6x6 normal matrix instead.
        let normal = rows.adjoint() * &rows;
        let svd = normal.svd(true, true);
        let v_t = svd.v_t.as_ref().expect("svd of a finite matrix");
        let conic: Vec<C64> = (0..6).map(|c| v_t[(5, c)].conj()).collect();
        let c_norm = conic.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if c_norm < 1e-12 {
            continue;
        }
        let mut inliers = 0;
        for p in &coords {
            let mut value = C64::new(0.0, 0.0);
            let mut scale = 0.0;
            for (k, &ck) in conic.iter().enumerate() {
                let mono = conic_monomial(p, k);
                value += ck * mono;
                scale += ck.norm() * mono.norm();
            }
            if value.norm() < tol::INCIDENCE_REL * scale.max(1e-300) {
                inliers += 1;
            }
        }
        if inliers >= conic_need {
            return Some(false);
        }
    }

    Some(true)
}

fn cross3(a: &[C64], b: &[C64]) -> [C64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

fn conic_monomial(p: &[C64], index: usize) -> C64 {
    match index {
        0 => p[0] * p[0],
        1 => p[1] * p[1],
        2 => p[2] * p[2],
        3 => p[0] * p[1],
        4 => p[0] * p[2],
        _ => p[1] * p[2],
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quartic3(terms: &[([u32; 3], f64)]) -> MultiPoly<C64> {
        MultiPoly::new(
            3,
            4,
            terms.iter().map(|(e, c)| (e.to_vec(), C64::new(*c, 0.0))),
        )
        .unwrap()
    }

    fn point(coords: [f64; 3]) -> ProjPoint<C64> {
        ProjPoint::new(coords.iter().map(|&c| C64::new(c, 0.0)).collect()).unwrap()
    }

    /// Quartic with nodes at the three coordinate points.
    fn three_nodal() -> MultiPoly<C64> {
        quartic3(&[([2, 2, 0], 1.0), ([0, 2, 2], 1.0), ([2, 0, 2], 1.0)])
    }

    /// Quartic with cusps at the three coordinate points.
    fn tricuspidal() -> MultiPoly<C64> {
        quartic3(&[
            ([2, 2, 0], 1.0),
            ([0, 2, 2], 1.0),
            ([2, 0, 2], 1.0),
            ([2, 1, 1], -2.0),
            ([1, 2, 1], -2.0),
            ([1, 1, 2], -2.0),
        ])
    }

    /// Two conics meeting only at (0:0:1) and (1:0:0), tangentially at both.
    fn tangent_conics() -> MultiPoly<C64> {
        // (x1^2 - x0 x2)(2 x1^2 - x0 x2)
        quartic3(&[([0, 4, 0], 2.0), ([1, 2, 1], -3.0), ([2, 0, 2], 1.0)])
    }

    #[test]
    fn node_at_coordinate_point() {
        let report = classify_singularity(&three_nodal(), &point([1.0, 0.0, 0.0])).unwrap();
        assert_eq!(report.kind, SingularityType::Node);
        assert_eq!(report.multiplicity, 2);
        assert_eq!(report.delta, Some(1));
        // Germ x1^2 + x2^2: tangent directions (0:1:i) and (0:1:-i).
        assert_eq!(report.tangent_cone.len(), 2);
        let expected = [
            ProjPoint::new(vec![
                C64::new(0.0, 0.0),
                C64::new(1.0, 0.0),
                C64::new(0.0, 1.0),
            ])
            .unwrap(),
            ProjPoint::new(vec![
                C64::new(0.0, 0.0),
                C64::new(1.0, 0.0),
                C64::new(0.0, -1.0),
            ])
            .unwrap(),
        ];
        for (dir, mult) in &report.tangent_cone {
            assert_eq!(*mult, 1);
            assert!(expected.iter().any(|e| e.proj_distance(dir) < 1e-8));
        }
    }

    #[test]
    fn cusp_at_coordinate_point() {
        let report = classify_singularity(&tricuspidal(), &point([1.0, 0.0, 0.0])).unwrap();
        assert_eq!(report.kind, SingularityType::Cusp);
        assert_eq!(report.delta, Some(1));
        // One doubled tangent along x1 = x2.
        assert_eq!(report.tangent_cone.len(), 1);
        assert_eq!(report.tangent_cone[0].1, 2);
    }

    #[test]
    fn tacnode_where_conics_touch() {
        let report = classify_singularity(&tangent_conics(), &point([0.0, 0.0, 1.0])).unwrap();
        assert_eq!(report.kind, SingularityType::Tacnode);
        assert_eq!(report.delta, Some(2));
        let report2 = classify_singularity(&tangent_conics(), &point([1.0, 0.0, 0.0])).unwrap();
        assert_eq!(report2.kind, SingularityType::Tacnode);
    }

    #[test]
    fn ordinary_triple_point() {
        // x2 x0 x1 (x0 + x1) + x0^4 + x1^4 at (0:0:1): cubic jet u v (u + v).
        let curve = quartic3(&[
            ([2, 1, 1], 1.0),
            ([1, 2, 1], 1.0),
            ([4, 0, 0], 1.0),
            ([0, 4, 0], 1.0),
        ]);
        let report = classify_singularity(&curve, &point([0.0, 0.0, 1.0])).unwrap();
        assert_eq!(report.kind, SingularityType::OrdinaryTriple);
        assert_eq!(report.multiplicity, 3);
        assert_eq!(report.delta, Some(3));
        assert_eq!(report.tangent_cone.len(), 3);
    }

    #[test]
    fn double_conic_germ_is_degenerate() {
        // (x1^2 - x0 x2)^2.
        let curve = quartic3(&[([0, 4, 0], 1.0), ([1, 2, 1], -2.0), ([2, 0, 2], 1.0)]);
        let report = classify_singularity(&curve, &point([1.0, 0.0, 0.0])).unwrap();
        assert!(matches!(report.kind, SingularityType::Degenerate(_)));
        assert_eq!(report.delta, None);
    }

    #[test]
    fn smooth_point_of_fermat_curve() {
        let curve = quartic3(&[([4, 0, 0], 1.0), ([0, 4, 0], 1.0), ([0, 0, 4], 1.0)]);
        let w = C64::from_polar(1.0, std::f64::consts::FRAC_PI_4);
        let p = ProjPoint::new(vec![C64::new(1.0, 0.0), w, C64::new(0.0, 0.0)]).unwrap();
        let report = classify_singularity(&curve, &p).unwrap();
        assert_eq!(report.kind, SingularityType::Smooth);
        assert_eq!(report.delta, Some(0));
        assert!(singular_points(&curve, 11).unwrap().is_empty());
    }

    #[test]
    fn off_curve_point_is_rejected() {
        let curve = three_nodal();
        let err = classify_singularity(&curve, &point([1.0, 1.0, 1.0])).unwrap_err();
        assert!(matches!(err, Error::OffSurface { .. }));
    }

    #[test]
    fn classification_survives_a_projective_change() {
        // G = F o T for integral invertible T; the node of F at (1:0:0)
        // appears for G at T^{-1}(1:0:0) = (1:1:-1).
        let f = three_nodal();
        let t_rows = [[1.0, 1.0, 0.0], [0.0, 1.0, 1.0], [1.0, 0.0, 1.0]];
        let images: Vec<MultiPoly<C64>> = t_rows
            .iter()
            .map(|row| {
                MultiPoly::new(
                    3,
                    1,
                    row.iter().enumerate().map(|(j, &c)| {
                        let mut e = vec![0u32; 3];
                        e[j] = 1;
                        (e, C64::new(c, 0.0))
                    }),
                )
                .unwrap()
            })
            .collect();
        let g = f.compose_linear(&images).unwrap();
        let report = classify_singularity(&g, &point([1.0, 1.0, -1.0])).unwrap();
        assert_eq!(report.kind, SingularityType::Node);
    }

    #[test]
    fn three_nodal_profile() {
        let profile = section_profile(&three_nodal(), 7).unwrap();
        assert_eq!(profile.singularities.len(), 3);
        for (p, report) in &profile.singularities {
            assert_eq!(report.kind, SingularityType::Node);
            let on_axis = (0..3).any(|k| {
                let mut e = vec![C64::new(0.0, 0.0); 3];
                e[k] = C64::new(1.0, 0.0);
                ProjPoint::new(e).unwrap().proj_distance(p) < 1e-6
            });
            assert!(on_axis, "unexpected singular point {p:?}");
        }
        assert_eq!(profile.genus, Some(0));
        assert_eq!(profile.irreducible_hint, Some(true));
        assert!(profile.reduced_hint);
    }

    #[test]
    fn tricuspidal_profile() {
        let profile = section_profile(&tricuspidal(), 13).unwrap();
        assert_eq!(profile.singularities.len(), 3);
        assert!(profile
            .singularities
            .iter()
            .all(|(_, r)| r.kind == SingularityType::Cusp));
        assert_eq!(profile.genus, Some(0));
        assert_eq!(profile.irreducible_hint, Some(true));
    }

    #[test]
    fn tangent_conics_profile() {
        let profile = section_profile(&tangent_conics(), 19).unwrap();
        assert_eq!(profile.singularities.len(), 2);
        assert!(profile
            .singularities
            .iter()
            .all(|(_, r)| r.kind == SingularityType::Tacnode));
        // Two tacnodes spend 4 on the genus: 3 - 4 = -1, betraying the
        // reducible configuration, and the conic scan sees it directly.
        assert_eq!(profile.genus, Some(-1));
        assert_eq!(profile.irreducible_hint, Some(false));
        assert!(profile.reduced_hint);
    }

    #[test]
    fn four_lines_profile() {
        // x0 x1 (x0 + x1 + x2)(x0 - x1 + 2 x2): six pairwise nodes.
        let l3 = [1.0, 1.0, 1.0];
        let l4 = [1.0, -1.0, 2.0];
        let mut terms = std::collections::BTreeMap::new();
        for (i, &c3) in l3.iter().enumerate() {
            for (j, &c4) in l4.iter().enumerate() {
                let mut e = vec![0u32; 3];
                e[0] += 1;
                e[1] += 1;
                e[i] += 1;
                e[j] += 1;
                *terms.entry(e).or_insert(0.0) += c3 * c4;
            }
        }
        let curve = MultiPoly::new(
            3,
            4,
            terms
                .into_iter()
                .filter(|(_, c)| *c != 0.0)
                .map(|(e, c)| (e, C64::new(c, 0.0))),
        )
        .unwrap();
        let profile = section_profile(&curve, 23).unwrap();
        assert_eq!(profile.singularities.len(), 6);
        assert!(profile
            .singularities
            .iter()
            .all(|(_, r)| r.kind == SingularityType::Node));
        assert_eq!(profile.genus, Some(-3));
        assert_eq!(profile.irreducible_hint, Some(false));
    }

    #[test]
    fn double_conic_profile_flags_nonreduced() {
        let curve = quartic3(&[([0, 4, 0], 1.0), ([1, 2, 1], -2.0), ([2, 0, 2], 1.0)]);
        let profile = section_profile(&curve, 29).unwrap();
        assert!(!profile.reduced_hint);
        assert_eq!(profile.genus, None);
        assert_eq!(profile.irreducible_hint, None);
        assert!(profile.singularities.is_empty());
    }
}
