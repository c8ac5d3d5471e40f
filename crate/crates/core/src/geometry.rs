//! Pointwise differential geometry of a quartic surface: tangent planes and
//! tangent sections, the seven-type classification of surface points by the
//! singularity pattern of their tangent section, asymptotic directions,
//! parabolic and hyperflex tests, and polar-section membership.

use std::fmt;

use crate::error::{Error, Result};
use crate::point::ProjPoint;
use crate::poly::MultiPoly;
use crate::scalar::C64;
#[cfg(test)]
use crate::singularities::classify_singularity;
use crate::singularities::{
    binary_form_directions, section_profile, SectionProfile, SingularityType,
};
use crate::surface::QuarticSurface;
use crate::tol;

/// The tangent plane of the surface at a smooth point.
#[derive(Debug, Clone)]
pub struct TangentPlane {
    /// Gauss image: the plane as a point of the dual space, `[grad F(p)]`.
    pub dual: ProjPoint<C64>,
    /// Spanning basis of the plane; `basis[0]` is the point itself, so plane
    /// coordinates put the point at `(1:0:0)`.
    pub basis: [ProjPoint<C64>; 3],
}

/// A tangent section `T_pX ∩ X` presented as a ternary quartic.
#[derive(Debug, Clone)]
pub struct TangentSection {
    pub curve: MultiPoly<C64>,
    pub plane: TangentPlane,
    /// Image of the point of tangency in plane coordinates — always
    /// `(1:0:0)` under this module's basis convention.
    pub p_image: ProjPoint<C64>,
}

/// Classification of a surface point by its tangent section.
///
/// The tangent section is always singular at the point itself; the genus of
/// the section together with the singularity types at and away from the
/// point separates the seven cases.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PointClass {
    /// Genus-2 section with one node at the point: the generic case.
    GeneralNode,
    /// Genus-2 section with a cusp at the point: a generic parabolic point.
    SimpleParabolic,
    /// Genus-1 section, nodes at the point and at one partner point sharing
    /// the same tangent plane.
    SimpleGaussDouble,
    /// Genus-1 section, cusp at the point and a node elsewhere.
    ParabolicGaussDouble,
    /// Genus-1 section, node at the point and a cusp elsewhere.
    DualParabolicGaussDouble,
    /// Genus-1 section with a single tacnode at the point: the collision
    /// limit of a double point's partner with the point itself.
    GaussSwallowtail,
    /// Genus-0 section with three nodes: the point lies on a rational
    /// tangent section.
    GaussTriple,
    /// Anything outside the seven-row table, with the observed pattern.
    Unclassified(String),
}

impl fmt::Display for PointClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PointClass::GeneralNode => write!(f, "general point"),
            PointClass::SimpleParabolic => write!(f, "simple parabolic point"),
            PointClass::SimpleGaussDouble => write!(f, "simple Gauss double point"),
            PointClass::ParabolicGaussDouble => write!(f, "parabolic Gauss double point"),
            PointClass::DualParabolicGaussDouble => {
                write!(f, "dual parabolic Gauss double point")
            }
            PointClass::GaussSwallowtail => write!(f, "Gauss swallowtail"),
            PointClass::GaussTriple => write!(f, "Gauss triple point"),
            PointClass::Unclassified(reason) => write!(f, "unclassified ({reason})"),
        }
    }
}

/// The second fundamental form at a point, in the tangent-plane basis.
#[derive(Debug, Clone)]
pub struct AsymptoticData {
    /// Matrix of the form on `(basis[1], basis[2])`.
    pub form: [[C64; 2]; 2],
    /// Numerical rank of the form (2 generic, 1 parabolic).
    pub rank: usize,
    /// Null directions as coefficient pairs on `(basis[1], basis[2])`.
    pub directions_uv: Vec<(C64, C64)>,
    /// The same directions embedded in ambient coordinates (defined up to
    /// adding a multiple of the point).
    pub directions: Vec<ProjPoint<C64>>,
}

/// Normalize a point onto the surface: accept points within the on-surface
/// tolerance, Newton-project near misses, reject anything farther away.
pub fn ensure_on_surface(surface: &QuarticSurface, p: &ProjPoint<C64>) -> Result<ProjPoint<C64>> {
    let residual = surface.on_surface_residual(p);
    if residual <= tol::ON_SURFACE_REL {
        Ok(p.normalized())
    } else if residual <= 1e-4 {
        surface.project_to_surface(p, 8)
    } else {
        Err(Error::OffSurface { residual })
    }
}

/// Tangent plane at a smooth surface point, with the Gauss image and a
/// deterministic basis whose first vector is the point itself.
pub fn tangent_plane(surface: &QuarticSurface, p: &ProjPoint<C64>) -> Result<TangentPlane> {
    let p = ensure_on_surface(surface, p)?;
    let g = surface.grad_at(&p);
    let scale = surface
        .grad()
        .iter()
        .map(|gi| gi.coeff_l1())
        .fold(0.0f64, f64::max);
    let g_inf = g.iter().map(|c| c.norm()).fold(0.0, f64::max);
    if g_inf <= tol::SINGULAR_SWEEP_REL * scale {
        return Err(Error::Degenerate(
            "gradient vanishes: the surface is singular at this point".into(),
        ));
    }
    let dual = ProjPoint::new(g.to_vec())?.normalized();

    // Kernel of the pairing v -> g . v, spanned by e_j - (g_j / g_pivot)
    // e_pivot; the point itself lies in it by the Euler identity.
    let pivot = (0..4)
        .max_by(|&a, &b| g[a].norm().total_cmp(&g[b].norm()))
        .expect("four gradient entries");
    let p0: Vec<C64> = {
        let c = p.coords();
        let n: f64 = c.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        c.iter().map(|z| z / n).collect()
    };
    let mut residuals: Vec<Vec<C64>> = Vec::new();
    for j in 0..4 {
        if j == pivot {
            continue;
        }
        let mut k = vec![C64::new(0.0, 0.0); 4];
        k[j] = C64::new(1.0, 0.0);
        k[pivot] = -g[j] / g[pivot];
        // Hermitian projection away from the point keeps us inside the
        // (complex-linear) plane.
        let overlap: C64 = k.iter().zip(&p0).map(|(a, b)| a * b.conj()).sum();
        for (ki, pi) in k.iter_mut().zip(&p0) {
            *ki -= overlap * pi;
        }
        residuals.push(k);
    }
    residuals.sort_by(|a, b| {
        let na: f64 = a.iter().map(|z| z.norm_sqr()).sum();
        let nb: f64 = b.iter().map(|z| z.norm_sqr()).sum();
        nb.total_cmp(&na)
    });
    let mut b1 = residuals[0].clone();
    let n1: f64 = b1.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    for z in &mut b1 {
        *z /= n1;
    }
    let mut best: Option<(f64, Vec<C64>)> = None;
    for cand in &residuals[1..] {
        let mut r = cand.clone();
        let overlap: C64 = r.iter().zip(&b1).map(|(a, b)| a * b.conj()).sum();
        for (ri, bi) in r.iter_mut().zip(&b1) {
            *ri -= overlap * bi;
        }
        let n: f64 = r.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if best.as_ref().map_or(true, |(bn, _)| n > *bn) {
            best = Some((n, r));
        }
    }
    let (n2, mut b2) = best.expect("two residual candidates");
    if n2 < 1e-12 {
        return Err(Error::Degenerate(
            "tangent-plane basis degenerated while orthonormalizing".into(),
        ));
    }
    for z in &mut b2 {
        *z /= n2;
    }
    Ok(TangentPlane {
        dual,
        basis: [p, ProjPoint::new(b1)?, ProjPoint::new(b2)?],
    })
}

/// The tangent section `T_pX ∩ X` as a ternary quartic in the tangent-plane
/// basis, with the point of tangency at `(1:0:0)`.
pub fn tangent_section(surface: &QuarticSurface, p: &ProjPoint<C64>) -> Result<TangentSection> {
    let plane = tangent_plane(surface, p)?;
    let curve = surface.f().restrict_to_plane(&plane.basis)?;
    if curve.is_zero() {
        return Err(Error::Degenerate(
            "tangent plane lies inside the surface".into(),
        ));
    }
    let p_image = ProjPoint::new(vec![
        C64::new(1.0, 0.0),
        C64::new(0.0, 0.0),
        C64::new(0.0, 0.0),
    ])?;
    Ok(TangentSection {
        curve,
        plane,
        p_image,
    })
}

fn kind_rank(kind: &SingularityType) -> u8 {
    match kind {
        SingularityType::Smooth => 0,
        SingularityType::Node => 1,
        SingularityType::Cusp => 2,
        SingularityType::Tacnode => 3,
        SingularityType::OrdinaryTriple => 4,
        SingularityType::Degenerate(_) => 5,
    }
}

/// Classify a surface point by the decision table on (section genus,
/// singularity at the point, singularities elsewhere).
pub fn classify_point(
    surface: &QuarticSurface,
    p: &ProjPoint<C64>,
    seed: u64,
) -> Result<(PointClass, SectionProfile)> {
    let section = tangent_section(surface, p)?;
    let profile = section_profile(&section.curve, seed)?;
    if !profile.reduced_hint {
        return Ok((
            PointClass::Unclassified("tangent section looks non-reduced".into()),
            profile,
        ));
    }
    let Some(genus) = profile.genus else {
        return Ok((
            PointClass::Unclassified(
                "a section singularity fell outside the classified types".into(),
            ),
            profile,
        ));
    };
    let mut at_p: Option<&SingularityType> = None;
    let mut elsewhere: Vec<&SingularityType> = Vec::new();
    for (location, report) in &profile.singularities {
        if location.proj_distance(&section.p_image) < tol::PROJ_MERGE {
            at_p = Some(&report.kind);
        } else {
            elsewhere.push(&report.kind);
        }
    }
    let Some(at_p) = at_p else {
        return Ok((
            PointClass::Unclassified("no section singularity at the point of tangency".into()),
            profile,
        ));
    };
    elsewhere.sort_by_key(|k| kind_rank(k));
    use SingularityType::{Cusp, Node, Tacnode};
    let class = match (genus, at_p, elsewhere.as_slice()) {
        (2, Node, []) => PointClass::GeneralNode,
        (2, Cusp, []) => PointClass::SimpleParabolic,
        (1, Node, [Node]) => PointClass::SimpleGaussDouble,
        (1, Cusp, [Node]) => PointClass::ParabolicGaussDouble,
        (1, Node, [Cusp]) => PointClass::DualParabolicGaussDouble,
        (1, Tacnode, []) => PointClass::GaussSwallowtail,
        (0, Node, [Node, Node]) => PointClass::GaussTriple,
        (g, k, rest) => PointClass::Unclassified(format!(
            "genus {g} section with {k} at the point and {} elsewhere",
            if rest.is_empty() {
                "nothing".to_string()
            } else {
                rest.iter()
                    .map(|r| r.to_string())
                    .collect::<Vec<_>>()
                    .join(", ")
            }
        )),
    };
    Ok((class, profile))
}

/// Second fundamental form at a smooth point: its matrix in the tangent
/// basis, numerical rank, and null (asymptotic) directions.
pub fn asymptotic_directions(
    surface: &QuarticSurface,
    p: &ProjPoint<C64>,
) -> Result<AsymptoticData> {
    let plane = tangent_plane(surface, p)?;
    let p = &plane.basis[0];
    let hess = surface.hess_at(p);
    let b1 = plane.basis[1].normalized();
    let b2 = plane.basis[2].normalized();
    let contract = |a: &ProjPoint<C64>, b: &ProjPoint<C64>| -> C64 {
        let (x, y) = (a.coords(), b.coords());
        let mut acc = C64::new(0.0, 0.0);
        for i in 0..4 {
            for j in 0..4 {
                acc += x[i] * hess[(i, j)] * y[j];
            }
        }
        acc
    };
    let form = [
        [contract(&b1, &b1), contract(&b1, &b2)],
        [contract(&b2, &b1), contract(&b2, &b2)],
    ];
    let hscale = surface
        .hess()
        .iter()
        .flatten()
        .map(|h| h.coeff_l1())
        .fold(0.0f64, f64::max);
    let m = nalgebra::Matrix2::new(form[0][0], form[0][1], form[1][0], form[1][1]);
    let svals = m.svd(false, false).singular_values;
    let (s1, s2) = (svals[0].max(svals[1]), svals[0].min(svals[1]));
    if s1 <= tol::PARABOLIC_REL * hscale {
        return Err(Error::Degenerate(
            "second fundamental form vanishes at this point".into(),
        ));
    }
    let rank = if s2 <= tol::RANK_SVD_REL * s1 { 1 } else { 2 };
    // Null directions: roots of the associated binary quadratic.
    let coeffs = [form[0][0], form[0][1] + form[1][0], form[1][1]];
    let mut directions_uv: Vec<(C64, C64)> = binary_form_directions(&coeffs)
        .into_iter()
        .map(|(u, v, _)| (u, v))
        .collect();
    directions_uv.sort_by(|a, b| {
        (a.0.re, a.0.im, a.1.re, a.1.im)
            .partial_cmp(&(b.0.re, b.0.im, b.1.re, b.1.im))
            .unwrap()
    });
    let directions = directions_uv
        .iter()
        .map(|&(u, v)| {
            let coords: Vec<C64> = b1
                .coords()
                .iter()
                .zip(b2.coords())
                .map(|(&c1, &c2)| u * c1 + v * c2)
                .collect();
            ProjPoint::new(coords).map(|d| d.normalized())
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(AsymptoticData {
        form,
        rank,
        directions_uv,
        directions,
    })
}

/// Whether the Hessian determinant vanishes at the point (relative to its
/// coefficient scale) — the defining condition of the parabolic curve.
pub fn is_parabolic(surface: &QuarticSurface, p: &ProjPoint<C64>) -> Result<bool> {
    let p = ensure_on_surface(surface, p)?;
    let value = surface.hess_det().eval(&p).norm();
    Ok(value <= tol::PARABOLIC_REL * surface.hess_det().coeff_l1())
}

/// Gauss image of a smooth surface point: its tangent plane as a point of
/// the dual space.
pub fn gauss_image(surface: &QuarticSurface, p: &ProjPoint<C64>) -> Result<ProjPoint<C64>> {
    Ok(tangent_plane(surface, p)?.dual)
}

/// Tangent directions whose line meets the surface with contact order four
/// at the point.  Generically empty; exactly one on the hyperflex curve.
pub fn hyperflex_directions(
    surface: &QuarticSurface,
    p: &ProjPoint<C64>,
) -> Result<Vec<ProjPoint<C64>>> {
    let asym = asymptotic_directions(surface, p)?;
    let plane = tangent_plane(surface, p)?;
    let p = &plane.basis[0];
    let b1 = plane.basis[1].normalized();
    let b2 = plane.basis[2].normalized();

    // Cubic contact form: c3(u, v) = (1/6) D^3F(p)(d, d, d) for
    // d = u b1 + v b2, expanded on the third-derivative tensor.
    let x = p.coords();
    let mut third = [[[C64::new(0.0, 0.0); 4]; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            let hij = &surface.hess()[i][j];
            for (k, t) in third[i][j].iter_mut().enumerate() {
                *t = hij.derivative(k).eval_coords(x);
            }
        }
    }
    let contract3 = |a: &[C64], b: &[C64], c: &[C64]| -> C64 {
        let mut acc = C64::new(0.0, 0.0);
        for i in 0..4 {
            for j in 0..4 {
                for k in 0..4 {
                    acc += a[i] * b[j] * c[k] * third[i][j][k];
                }
            }
        }
        acc
    };
    let (v1, v2) = (b1.coords(), b2.coords());
    let t111 = contract3(v1, v1, v1);
    let t112 = contract3(v1, v1, v2);
    let t122 = contract3(v1, v2, v2);
    let t222 = contract3(v2, v2, v2);
    let c3_l1 = (t111.norm() + 3.0 * t112.norm() + 3.0 * t122.norm() + t222.norm())
        .max(1e-10 * surface.f().coeff_l1());

    let mut out = Vec::new();
    for (&(u, v), direction) in asym.directions_uv.iter().zip(&asym.directions) {
        let c3 = t111 * u * u * u
            + t112 * u * u * v * C64::new(3.0, 0.0)
            + t122 * u * v * v * C64::new(3.0, 0.0)
            + t222 * v * v * v;
        let dir_scale = u.norm().max(v.norm()).powi(3);
        if c3.norm() > tol::HYPERFLEX_REL * c3_l1 * dir_scale {
            continue;
        }
        // Certify on the actual restriction: orders 0..=3 vanish, order 4
        // does not (a fully vanishing restriction would mean a contained
        // line, which contradicts the smooth-point setting served here).
        let restriction = surface.f().restrict_to_line(p, direction)?;
        let l1: f64 = restriction.coeffs().iter().map(|c| c.norm()).sum();
        if l1 <= tol::LINE_IN_SURFACE_REL * surface.f().coeff_l1() {
            return Err(Error::Degenerate(
                "a candidate hyperflex line lies inside the surface".into(),
            ));
        }
        if restriction.coeff(2).norm() <= tol::HYPERFLEX_REL * l1
            && restriction.coeff(3).norm() <= tol::HYPERFLEX_REL * l1
        {
            out.push(direction.clone());
        }
    }
    Ok(out)
}

/// Whether `p` lies on the tangent plane of the surface at `q`, detected by
/// the vanishing of the polar cubic of `p` at `q`.
pub fn polar_section_membership(
    surface: &QuarticSurface,
    p: &ProjPoint<C64>,
    q: &ProjPoint<C64>,
) -> Result<bool> {
    let q = ensure_on_surface(surface, q)?;
    let polar = surface.f().polar(&p.normalized())?;
    Ok(polar.eval(&q).norm() <= tol::POLAR_MEMBER_REL * polar.coeff_l1())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bivar::{solve_bivariate, BivarOptions};

    fn surf(terms: &[([u32; 4], f64)]) -> QuarticSurface {
        QuarticSurface::from_poly(
            MultiPoly::new(
                4,
                4,
                terms.iter().map(|(e, c)| (e.to_vec(), C64::new(*c, 0.0))),
            )
            .unwrap(),
        )
        .unwrap()
    }

    /// Same projective line through the surface point?  Compares the wedge
    /// of (point, direction), which quotients out multiples of the point.
    fn same_direction_mod_point(
        p: &ProjPoint<C64>,
        d1: &ProjPoint<C64>,
        d2: &ProjPoint<C64>,
    ) -> bool {
        let wedge = |a: &ProjPoint<C64>, b: &ProjPoint<C64>| {
            let (x, y) = (a.normalized(), b.normalized());
            let (x, y) = (x.coords().to_vec(), y.coords().to_vec());
            let mut w = Vec::with_capacity(6);
            for i in 0..4 {
                for j in (i + 1)..4 {
                    w.push(x[i] * y[j] - x[j] * y[i]);
                }
            }
            ProjPoint::new(w).unwrap()
        };
        wedge(p, d1).proj_distance(&wedge(p, d2)) < 1e-6
    }

    #[test]
    fn diagonal_surface_dual_point() {
        let surface = QuarticSurface::fermat_variant();
        let p = ProjPoint::from_reals(&[1.0, 1.0, 0.0, 0.0]).unwrap();
        let plane = tangent_plane(&surface, &p).unwrap();
        let expected = ProjPoint::from_reals(&[1.0, -1.0, 0.0, 0.0]).unwrap();
        assert!(plane.dual.proj_distance(&expected) < 1e-12);
    }

    #[test]
    fn tangent_plane_basis_spans_the_plane_through_p() {
        let surface = QuarticSurface::random(42).unwrap();
        for p in surface.random_points_on_surface(4, 3).unwrap() {
            let plane = tangent_plane(&surface, &p).unwrap();
            assert!(plane.basis[0].proj_distance(&p) < 1e-12);
            let g = surface.grad_at(&p);
            let gs: f64 = g.iter().map(|c| c.norm()).sum();
            for b in &plane.basis {
                let bn = b.normalized();
                let pairing: C64 = g.iter().zip(bn.coords()).map(|(gi, bi)| gi * bi).sum();
                assert!(pairing.norm() / gs < 1e-12);
            }
            // Rank 3: pairwise projectively distinct and not coplanar in the
            // trivial sense — check via a 3x4 SVD.
            let m =
                nalgebra::DMatrix::from_fn(3, 4, |r, c| plane.basis[r].normalized().coords()[c]);
            let svals = m.svd(false, false).singular_values;
            assert!(svals[2] > 1e-8);
        }
    }

    #[test]
    fn tangent_section_is_singular_at_the_image() {
        let surface = QuarticSurface::random(42).unwrap();
        for p in surface.random_points_on_surface(3, 8).unwrap() {
            let section = tangent_section(&surface, &p).unwrap();
            let report = classify_singularity(&section.curve, &section.p_image).unwrap();
            assert!(report.multiplicity >= 2);
        }
    }

    #[test]
    fn generic_points_classify_as_general() {
        let surface = QuarticSurface::random(1).unwrap();
        for (i, p) in surface
            .random_points_on_surface(3, 11)
            .unwrap()
            .iter()
            .enumerate()
        {
            let (class, profile) = classify_point(&surface, p, 100 + i as u64).unwrap();
            assert_eq!(class, PointClass::GeneralNode);
            assert_eq!(profile.genus, Some(2));
            assert_eq!(profile.singularities.len(), 1);
        }
    }

    #[test]
    fn asymptotic_directions_match_node_branches() {
        let surface = QuarticSurface::random(1).unwrap();
        let p = surface.random_points_on_surface(1, 17).unwrap().remove(0);
        let asym = asymptotic_directions(&surface, &p).unwrap();
        assert_eq!(asym.rank, 2);
        assert_eq!(asym.directions.len(), 2);
        // Branch tangents of the node of the tangent section at p, in plane
        // coordinates (0 : du : dv), against asymptotic (u : v).
        let section = tangent_section(&surface, &p).unwrap();
        let report = classify_singularity(&section.curve, &section.p_image).unwrap();
        assert_eq!(report.tangent_cone.len(), 2);
        for (cone_dir, _) in &report.tangent_cone {
            let c = cone_dir.normalized();
            let cone_uv = ProjPoint::new(vec![c.coords()[1], c.coords()[2]]).unwrap();
            let matched = asym.directions_uv.iter().any(|&(u, v)| {
                ProjPoint::new(vec![u, v]).unwrap().proj_distance(&cone_uv)
                    < tol::TANGENT_CONE_MATCH
            });
            assert!(matched, "cone direction {cone_uv:?} missing");
        }
    }

    #[test]
    fn parabolic_points_have_rank_one_and_cusp_sections() {
        let surface = QuarticSurface::random(5).unwrap();
        // Cut {F = 0} ∩ {det Hess = 0} with a random plane and solve.
        let basis = [
            ProjPoint::from_reals(&[1.0, 0.3, -0.2, 0.15]).unwrap(),
            ProjPoint::from_reals(&[0.1, 1.0, 0.4, -0.3]).unwrap(),
            ProjPoint::from_reals(&[-0.2, 0.25, 1.0, 0.5]).unwrap(),
        ];
        let f_plane = surface.f().restrict_to_plane(&basis).unwrap();
        let h_plane = surface.hess_det().restrict_to_plane(&basis).unwrap();
        let sols = solve_bivariate(
            &f_plane.dehomogenize(0),
            &h_plane.dehomogenize(0),
            &BivarOptions::default(),
        )
        .unwrap();
        assert!(!sols.is_empty(), "a plane meets the parabolic curve");
        let mut checked = 0;
        for sol in sols.iter().take(3) {
            let coords: Vec<C64> = (0..4)
                .map(|i| {
                    basis[0].normalized().coords()[i]
                        + sol.x * basis[1].normalized().coords()[i]
                        + sol.y * basis[2].normalized().coords()[i]
                })
                .collect();
            let q = ProjPoint::new(coords).unwrap();
            if surface.on_surface_residual(&q) > 1e-8 {
                continue;
            }
            assert!(is_parabolic(&surface, &q).unwrap());
            let asym = asymptotic_directions(&surface, &q).unwrap();
            assert_eq!(asym.rank, 1);
            assert_eq!(asym.directions.len(), 1);
            let (class, _) = classify_point(&surface, &q, 55).unwrap();
            assert_eq!(class, PointClass::SimpleParabolic);
            checked += 1;
        }
        assert!(checked >= 1, "no parabolic sample certified on-surface");
    }

    #[test]
    fn generic_points_are_not_parabolic() {
        let surface = QuarticSurface::random(1).unwrap();
        for p in surface.random_points_on_surface(6, 23).unwrap() {
            assert!(!is_parabolic(&surface, &p).unwrap());
            assert_eq!(asymptotic_directions(&surface, &p).unwrap().rank, 2);
            assert!(hyperflex_directions(&surface, &p).unwrap().is_empty());
        }
    }

    #[test]
    fn constructed_hyperflex_is_found() {
        // Kill the coefficients of x0^4, x0^3 x1, x0^2 x1^2, x0 x1^3: then
        // (1:0:0:0) lies on the surface and the line toward (0:1:0:0) meets
        // it only at t^4.
        let base = QuarticSurface::random(11).unwrap();
        let banned: [[u32; 4]; 4] = [[4, 0, 0, 0], [3, 1, 0, 0], [2, 2, 0, 0], [1, 3, 0, 0]];
        let mut terms: Vec<(Vec<u32>, C64)> = base
            .f()
            .terms()
            .filter(|(e, _)| !banned.iter().any(|b| b.as_slice() == *e))
            .map(|(e, c)| (e.to_vec(), *c))
            .collect();
        if !terms.iter().any(|(e, _)| e.as_slice() == [0, 4, 0, 0]) {
            terms.push((vec![0, 4, 0, 0], C64::new(3.0, 0.0)));
        }
        let surface = QuarticSurface::from_poly(MultiPoly::new(4, 4, terms).unwrap()).unwrap();
        let p = ProjPoint::from_reals(&[1.0, 0.0, 0.0, 0.0]).unwrap();
        let flexes = hyperflex_directions(&surface, &p).unwrap();
        assert_eq!(flexes.len(), 1);
        let expected = ProjPoint::from_reals(&[0.0, 1.0, 0.0, 0.0]).unwrap();
        assert!(same_direction_mod_point(&p, &flexes[0], &expected));
        let restriction = surface.f().restrict_to_line(&p, &flexes[0]).unwrap();
        let l1: f64 = restriction.coeffs().iter().map(|c| c.norm()).sum();
        for k in 0..=3 {
            assert!(restriction.coeff(k).norm() < 1e-9 * l1);
        }
        assert!(restriction.coeff(4).norm() > 1e-3 * l1);
    }

    #[test]
    fn swallowtail_fixture_classifies_and_flexes() {
        // x0^2 x2^2 - x1^4 + x1 x2^3 + x0^3 x3: the tangent section at
        // (1:0:0:0) is the plane quartic y0^2 y2^2 - y1^4 + y1 y2^3, whose
        // only singularity is a tacnode at the image of the point.
        let surface = surf(&[
            ([2, 0, 2, 0], 1.0),
            ([0, 4, 0, 0], -1.0),
            ([0, 1, 3, 0], 1.0),
            ([3, 0, 0, 1], 1.0),
        ]);
        let p = ProjPoint::from_reals(&[1.0, 0.0, 0.0, 0.0]).unwrap();
        let (class, profile) = classify_point(&surface, &p, 7).unwrap();
        assert_eq!(class, PointClass::GaussSwallowtail);
        assert_eq!(profile.genus, Some(1));
        let asym = asymptotic_directions(&surface, &p).unwrap();
        assert_eq!(asym.rank, 1);
        assert!(is_parabolic(&surface, &p).unwrap());
        let flexes = hyperflex_directions(&surface, &p).unwrap();
        assert_eq!(flexes.len(), 1);
        assert!(same_direction_mod_point(
            &p,
            &flexes[0],
            &asym.directions[0]
        ));
    }

    #[test]
    fn polar_membership_detects_tangency() {
        let surface = QuarticSurface::random(3).unwrap();
        let q = surface.random_points_on_surface(1, 31).unwrap().remove(0);
        // q itself always lies on its own tangent plane.
        assert!(polar_section_membership(&surface, &q, &q).unwrap());
        // Any point of T_qX passes; a random point does not.
        let plane = tangent_plane(&surface, &q).unwrap();
        assert!(polar_section_membership(&surface, &plane.basis[1], &q).unwrap());
        let far = ProjPoint::from_reals(&[0.3, -1.0, 0.7, 0.2]).unwrap();
        assert!(!polar_section_membership(&surface, &far, &q).unwrap());
    }

    #[test]
    fn gauss_image_coordinates_are_the_partials() {
        let surface = QuarticSurface::random(3).unwrap();
        // The polar with respect to a coordinate point is the corresponding
        // partial derivative — the Gauss map's coordinate functions.
        for i in 0..4 {
            let mut e = [0.0; 4];
            e[i] = 1.0;
            let ei = ProjPoint::from_reals(&e).unwrap();
            let polar = surface.f().polar(&ei).unwrap();
            let defect = polar.sub(&surface.grad()[i]).unwrap();
            assert!(defect.is_zero() || defect.norm_inf() < 1e-14);
        }
        let p = surface.random_points_on_surface(1, 41).unwrap().remove(0);
        let image = gauss_image(&surface, &p).unwrap();
        let expected = ProjPoint::new(surface.grad_at(&p).to_vec()).unwrap();
        assert!(image.proj_distance(&expected) < 1e-12);
    }

    #[test]
    fn off_surface_points_are_rejected() {
        let surface = QuarticSurface::random(1).unwrap();
        let far = ProjPoint::from_reals(&[1.0, 1.0, 1.0, 1.0]).unwrap();
        match classify_point(&surface, &far, 0) {
            Err(Error::OffSurface { .. }) => {}
            other => panic!("expected an off-surface rejection, got {other:?}"),
        }
    }
}
