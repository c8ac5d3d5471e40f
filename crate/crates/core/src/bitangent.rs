//! Bitangent lines of a quartic surface: certified double contact, the
//! twelve-line fiber of bitangents through a base point, the pencil of
//! bitangents tangent at a point of the surface, the tangent space of the
//! variety of bitangents at a line, and the ramification determinant of the
//! line-evaluation map.
//!
//! A line `l` is a *bitangent* of `X = {F = 0}` when the restriction of `F`
//! to `l` is a nonzero square, `F|_l = c · q(t)^2` with `q` quadratic — the
//! scheme `l ∩ X` is non-reduced over each of its support points.  The two
//! generic contact points may coincide in a single quadruple contact; such
//! lines are kept and tagged as hyperflexes.  Certification screens a
//! candidate with the relative subresultant pair of `(F|_l, F|_l')` and then
//! fits the square root directly by Gauss-Newton, so every accepted line
//! carries an explicit factorization residual.

use crate::bivar::{solve_bivariate, BivarOptions};
use crate::error::{Error, Result};
use crate::geometry;
use crate::pluecker::PlueckerLine;
use crate::point::ProjPoint;
use crate::poly::{det_bipoly, subresultant_pair, sylvester_submatrix, BiPoly, MultiPoly, UniPoly};
use crate::scalar::{Coeff, C64};
use crate::surface::QuarticSurface;
use crate::tol;
use nalgebra::DMatrix;
use std::f64::consts::TAU;

/// Relative size under which the leading restriction coefficient forces a
/// re-span (the second spanning point lies on the zero locus, pushing a
/// contact to `t = ∞`).
const RESPAN_LEAD_REL: f64 = 1e-8;

fn czero() -> C64 {
    C64::new(0.0, 0.0)
}

fn cone() -> C64 {
    C64::new(1.0, 0.0)
}

/// A certified bitangent line of a quartic surface.
///
/// `quartic` is the restriction of the defining form to the stored span of
/// `line` (`t ↦ F(a + t b)`), and the certificate is the factorization
/// `quartic ≈ scale · square_root²` with `square_root` monic quadratic.
/// The contact parameters are the roots of `square_root`, listed in the
/// same parameterization and sorted deterministically; for a hyperflex the
/// two entries coincide.
#[derive(Debug, Clone)]
pub struct BitangentCertificate {
    /// The certified line; its span fixes the parameterization below.
    pub line: PlueckerLine,
    /// `t ↦ F(a + t b)` on the stored span.
    pub quartic: UniPoly<C64>,
    /// Monic quadratic `q` with `quartic ≈ scale · q²`.
    pub square_root: UniPoly<C64>,
    /// Leading factor of the certified square.
    pub scale: C64,
    /// The two contact parameters with the contact points on the surface.
    pub contact: [(C64, ProjPoint<C64>); 2],
    /// True when the contacts coincide (one quadruple intersection point).
    pub hyperflex: bool,
    /// `‖quartic − scale·q²‖_∞ / ‖quartic‖_∞`.
    pub fit_residual: f64,
    /// Relative `(resultant, first subresultant)` screen values of
    /// `(quartic, quartic')`.
    pub gate_residuals: (f64, f64),
    /// Worst relative surface residual of the two contact points.
    pub contact_surface_residual: f64,
}

/// The bitangents of a surface through one base point.
#[derive(Debug, Clone)]
pub struct FiberReport {
    /// Normalized base point.
    pub base_point: ProjPoint<C64>,
    /// Whether the base point lies on the surface (within `1e-8` relative);
    /// on-surface fibers have six bitangents, all tangent at the base point,
    /// instead of the generic twelve.
    pub base_on_surface: bool,
    /// Distinct candidate lines produced by the two tangency conditions
    /// before certification (includes lines with a single higher-order
    /// contact, which certification rejects).
    pub raw_candidates: usize,
    /// Candidates that failed certification.
    pub rejected: usize,
    /// The certified bitangents, sorted by their Plücker keys.
    pub bitangents: Vec<BitangentCertificate>,
}

/// Exact restriction `t ↦ f(a + t b)` for the *given* coordinate
/// representatives.  Unlike `MultiPoly::restrict_to_line` this performs no
/// internal renormalization, so contact parameters stay tied to the
/// caller's frame.  Coefficients are recovered by an inverse DFT on
/// `deg + 1` unit-circle samples, which is exact for the degrees used here.
fn line_poly(f: &MultiPoly<C64>, a: &[C64], b: &[C64], deg: usize) -> UniPoly<C64> {
    let n = deg + 1;
    let vals: Vec<C64> = (0..n)
        .map(|k| {
            let t = C64::from_polar(1.0, TAU * k as f64 / n as f64);
            let x: Vec<C64> = a.iter().zip(b).map(|(ai, bi)| ai + t * bi).collect();
            f.eval_coords(&x)
        })
        .collect();
    let coeffs: Vec<C64> = (0..n)
        .map(|j| {
            let mut c = czero();
            for (k, v) in vals.iter().enumerate() {
                c += v * C64::from_polar(1.0, -TAU * (j * k) as f64 / n as f64);
            }
            c / n as f64
        })
        .collect();
    UniPoly::new(coeffs)
}

/// Restriction coefficients of `f` along the moving line
/// `t ↦ A(u,v) + t B(u,v)`, where `A = a[0] + u a[1] + v a[2]` and
/// `B = b[0] + u b[1] + v b[2]` are affine-linear in the two family
/// parameters: returns `[c_0, .., c_4]` with `f(A + tB) = Σ c_k(u,v) t^k`.
/// The expansion is symbolic, so each `c_k` is exact in the coefficients
/// of `f`.
fn pencil_restriction(f: &MultiPoly<C64>, a: [&[C64]; 3], b: [&[C64]; 3]) -> [BiPoly<C64>; 5] {
    let nv = f.num_vars();
    let binom: [[f64; 5]; 5] = [
        [1.0, 0.0, 0.0, 0.0, 0.0],
        [1.0, 1.0, 0.0, 0.0, 0.0],
        [1.0, 2.0, 1.0, 0.0, 0.0],
        [1.0, 3.0, 3.0, 1.0, 0.0],
        [1.0, 4.0, 6.0, 4.0, 1.0],
    ];
    let lin = |triple: [&[C64]; 3], l: usize| {
        BiPoly::from_terms([
            (0u32, 0u32, triple[0][l]),
            (1, 0, triple[1][l]),
            (0, 1, triple[2][l]),
        ])
    };
    let mut pow_a: Vec<Vec<BiPoly<C64>>> = Vec::with_capacity(nv);
    let mut pow_b: Vec<Vec<BiPoly<C64>>> = Vec::with_capacity(nv);
    for l in 0..nv {
        let al = lin(a, l);
        let bl = lin(b, l);
        let mut pa = vec![BiPoly::constant(cone())];
        let mut pb = vec![BiPoly::constant(cone())];
        for e in 1..=4usize {
            pa.push(pa[e - 1].mul(&al));
            pb.push(pb[e - 1].mul(&bl));
        }
        pow_a.push(pa);
        pow_b.push(pb);
    }
    let mut out: [BiPoly<C64>; 5] = std::array::from_fn(|_| BiPoly::zero());
    for (exps, coeff) in f.terms() {
        let mut acc: Vec<Option<BiPoly<C64>>> = vec![None; 5];
        acc[0] = Some(BiPoly::constant(*coeff));
        for l in 0..nv {
            let e = exps[l] as usize;
            if e == 0 {
                continue;
            }
            let mut next: Vec<Option<BiPoly<C64>>> = vec![None; 5];
            for (k, slot) in acc.iter().enumerate() {
                let Some(cur) = slot else { continue };
                if cur.is_zero() {
                    continue;
                }
                for j in 0..=e {
                    if k + j > 4 {
                        break;
                    }
                    let factor = pow_a[l][e - j]
                        .mul(&pow_b[l][j])
                        .scale(&C64::new(binom[e][j], 0.0));
                    let add = cur.mul(&factor);
                    next[k + j] = Some(match next[k + j].take() {
                        None => add,
                        Some(s) => s.add(&add),
                    });
                }
            }
            acc = next;
        }
        for (k, slot) in acc.iter().enumerate() {
            if let Some(pk) = slot {
                out[k] = out[k].add(pk);
            }
        }
    }
    out
}

/// The discriminant of the family: the resultant of the pair of partial
/// derivatives `(Q_s, Q_t)` of the *binary* quartic
/// `Q(s,t) = Σ c_k s^{4-k} t^k`, vanishing exactly where `Q` has a
/// multiple root.  Working with the binary pair keeps contact at `t = ∞`
/// on an equal footing, so no parameterization chart needs a special case.
/// Doubled-contact parameters are the *nodes* of this curve (one branch
/// per contact), inflectional contact gives its cusps.
fn contact_discriminant(c: &[BiPoly<C64>; 5]) -> BiPoly<C64> {
    let qs: Vec<BiPoly<C64>> = (0..4)
        .map(|k| c[k].scale(&C64::new((4 - k) as f64, 0.0)))
        .collect();
    let qt: Vec<BiPoly<C64>> = (0..4)
        .map(|k| c[k + 1].scale(&C64::new((k + 1) as f64, 0.0)))
        .collect();
    det_bipoly(&sylvester_submatrix(&qs, &qt, 0, BiPoly::zero()))
}

/// The two conditions cutting out family parameters whose restriction has
/// doubled contact: the resultant and the first principal subresultant of
/// the binary pair `(Q_s, Q_t)`.  They vanish together exactly when the
/// root multiplicities of `Q` on the projective line satisfy
/// `Σ (m_i − 1) ≥ 2` — two double roots, or one root of order ≥ 3.
fn double_contact_conditions(c: &[BiPoly<C64>; 5]) -> (BiPoly<C64>, BiPoly<C64>) {
    let qs: Vec<BiPoly<C64>> = (0..4)
        .map(|k| c[k].scale(&C64::new((4 - k) as f64, 0.0)))
        .collect();
    let qt: Vec<BiPoly<C64>> = (0..4)
        .map(|k| c[k + 1].scale(&C64::new((k + 1) as f64, 0.0)))
        .collect();
    let g1 = det_bipoly(&sylvester_submatrix(&qs, &qt, 0, BiPoly::zero()));
    let g2 = det_bipoly(&sylvester_submatrix(&qs, &qt, 1, BiPoly::zero()));
    (g1, g2)
}

/// Chart-level candidate parameters for doubled contact.
///
/// Doubled contacts are multiplicity-two intersections of the resultant
/// and subresultant conditions, which makes direct solving of that pair
/// miss roots erratically.  They are instead *simple* zeros of the
/// gradient of the contact discriminant — a node's Hessian is
/// nondegenerate — so the default route solves `∇Δ = 0` and lets
/// certification discard the other critical points (cusps from
/// inflectional contact, critical points off the curve).  When the family
/// has a persistent base root (`persistent_contact`, base point of a
/// fiber on the zero locus), the discriminant degenerates into
/// `c₁² · (residual discriminant)` whose singular locus is
/// one-dimensional, and the resultant–subresultant pair with its
/// multiplicity-two intersections is the usable formulation.
fn double_contact_candidates(
    c: &[BiPoly<C64>; 5],
    persistent_contact: bool,
    seed: u64,
) -> Result<Vec<(C64, C64)>> {
    let pair = if persistent_contact {
        let (g1, g2) = double_contact_conditions(c);
        (unit_scaled(g1), unit_scaled(g2))
    } else {
        let delta = contact_discriminant(c);
        (
            unit_scaled(delta.partial_x()),
            unit_scaled(delta.partial_y()),
        )
    };
    // A second re-seeded run moves the interpolation nodes and the Newton
    // starts, making a joint miss of any single solution negligible while
    // staying deterministic for a fixed input seed.
    let mut out: Vec<(C64, C64)> = Vec::new();
    for round in 0..2u64 {
        let opts = BivarOptions {
            seed: seed.wrapping_add(round.wrapping_mul(0x5851_f42d_4c95_7f2d)),
            ..BivarOptions::default()
        };
        let sols = match solve_bivariate(&pair.0, &pair.1, &opts) {
            Ok(sols) => sols,
            // The discriminant of a special enough curve carries a repeated
            // factor, which its gradient inherits as a common one.  The
            // resultant–subresultant pair still cuts out the right set
            // there, and the polish step recovers the accuracy its
            // multiplicity-two intersections cost.
            Err(Error::CommonFactor) if !persistent_contact => {
                let (g1, g2) = double_contact_conditions(c);
                let alt = (unit_scaled(g1), unit_scaled(g2));
                solve_bivariate(&alt.0, &alt.1, &opts)?
            }
            Err(e) => return Err(e),
        };
        for s in sols {
            let fresh = out.iter().all(|(x, y)| {
                let scale = [1.0, x.norm(), y.norm()].into_iter().fold(1.0, f64::max);
                ((s.x - x).norm_sqr() + (s.y - y).norm_sqr()).sqrt() > tol::SOLUTION_DEDUP * scale
            });
            if fresh {
                out.push((s.x, s.y));
            }
        }
    }
    Ok(out)
}

fn unit_scaled(g: BiPoly<C64>) -> BiPoly<C64> {
    let s = g.norm_inf();
    if s > 0.0 {
        g.scale(&C64::new(1.0 / s, 0.0))
    } else {
        g
    }
}

/// Newton polish of a doubled-contact candidate inside one pencil chart.
///
/// A bitangent is a *multiplicity-two* intersection of the two chart
/// conditions (each condition's hypersurface contains both local tangency
/// sheets), which caps direct root-finding at roughly the square root of
/// machine precision — not enough for certification.  The square system
/// `Q = ∂Q/∂t = 0` at two unknown contact parameters is regular at a
/// generic bitangent, so a few Newton steps on `(u, v, t₁, t₂)` restore
/// full accuracy.  When the pencil has a persistent root at `t = 0` (base
/// point on the zero locus) that contact is pinned there — the generic
/// system is singular along it — and the first-order tangency condition
/// `c₁(u, v) = 0` replaces its two equations.
fn polish_double_contact(
    c: &[BiPoly<C64>; 5],
    pin_persistent_contact: bool,
    start: (C64, C64, C64, C64),
) -> (C64, C64) {
    let cu: Vec<BiPoly<C64>> = c.iter().map(|p| p.partial_x()).collect();
    let cv: Vec<BiPoly<C64>> = c.iter().map(|p| p.partial_y()).collect();
    let (mut u, mut v, mut t1, mut t2) = start;
    // With a base point on the surface, a double contact at the base itself
    // is forced for every genuine solution, so the persistent contact is
    // pinned to zero outright and only the free contact is iterated.
    if pin_persistent_contact && t2.norm() < t1.norm() {
        std::mem::swap(&mut t1, &mut t2);
    }
    let pinned = pin_persistent_contact;
    let mut best = (u, v);
    let mut best_res = f64::INFINITY;
    for _ in 0..60 {
        let ck: Vec<C64> = c.iter().map(|p| p.eval(&u, &v)).collect();
        let cuk: Vec<C64> = cu.iter().map(|p| p.eval(&u, &v)).collect();
        let cvk: Vec<C64> = cv.iter().map(|p| p.eval(&u, &v)).collect();
        let q = UniPoly::new(ck.clone());
        let qd = q.derivative();
        let qdd = qd.derivative();
        let qu = UniPoly::new(cuk.clone());
        let qv = UniPoly::new(cvk.clone());
        let qud = qu.derivative();
        let qvd = qv.derivative();
        let scale = ck.iter().map(|x| x.norm()).fold(0.0f64, f64::max)
            * (1.0 + t1.norm().max(t2.norm())).powi(4)
            + 1e-300;
        let (e, jac) = if pinned {
            let e = vec![ck[1], q.eval(&t2), qd.eval(&t2)];
            let jac = DMatrix::from_row_slice(
                3,
                3,
                &[
                    cuk[1],
                    cvk[1],
                    czero(),
                    qu.eval(&t2),
                    qv.eval(&t2),
                    qd.eval(&t2),
                    qud.eval(&t2),
                    qvd.eval(&t2),
                    qdd.eval(&t2),
                ],
            );
            (e, jac)
        } else {
            let e = vec![q.eval(&t1), qd.eval(&t1), q.eval(&t2), qd.eval(&t2)];
            let jac = DMatrix::from_row_slice(
                4,
                4,
                &[
                    qu.eval(&t1),
                    qv.eval(&t1),
                    qd.eval(&t1),
                    czero(),
                    qud.eval(&t1),
                    qvd.eval(&t1),
                    qdd.eval(&t1),
                    czero(),
                    qu.eval(&t2),
                    qv.eval(&t2),
                    czero(),
                    qd.eval(&t2),
                    qud.eval(&t2),
                    qvd.eval(&t2),
                    czero(),
                    qdd.eval(&t2),
                ],
            );
            (e, jac)
        };
        let res = e.iter().map(|x| x.norm()).fold(0.0f64, f64::max) / scale;
        if res < best_res {
            best_res = res;
            best = (u, v);
        }
        if res < 1e-15 {
            break;
        }
        let rhs = nalgebra::DVector::from_iterator(e.len(), e.iter().map(|x| -x));
        let Some(step) = jac.lu().solve(&rhs) else {
            break;
        };
        u += step[0];
        v += step[1];
        if pinned {
            t2 += step[2];
        } else {
            t1 += step[2];
            t2 += step[3];
        }
        let sn = step.iter().map(|x| x.norm()).fold(0.0f64, f64::max);
        if sn < 1e-14 * (1.0 + u.norm() + v.norm() + t1.norm() + t2.norm()) {
            let ck: Vec<C64> = c.iter().map(|p| p.eval(&u, &v)).collect();
            let q = UniPoly::new(ck.clone());
            let qd = q.derivative();
            let scale = ck.iter().map(|x| x.norm()).fold(0.0f64, f64::max)
                * (1.0 + t1.norm().max(t2.norm())).powi(4)
                + 1e-300;
            let e_last = if pinned {
                vec![ck[1], q.eval(&t2), qd.eval(&t2)]
            } else {
                vec![q.eval(&t1), qd.eval(&t1), q.eval(&t2), qd.eval(&t2)]
            };
            let res = e_last.iter().map(|x| x.norm()).fold(0.0f64, f64::max) / scale;
            if res < best_res {
                best = (u, v);
            }
            break;
        }
    }
    best
}

struct SquareFit {
    scale: C64,
    beta: C64,
    gamma: C64,
    residual: f64,
}

/// Least-squares factorization `q ≈ c (t² + β t + γ)²` by Gauss-Newton on
/// `(c, β, γ)`, started from each of the three pairings of the quartic's
/// roots into two doubles (one of which brackets the true clustering
/// whenever the factorization exists).
fn fit_square_root(q: &UniPoly<C64>) -> Result<SquareFit> {
    let qscale = q.norm_inf();
    if qscale <= 0.0 {
        return Err(Error::InvalidPolynomial(
            "cannot fit a square root of the zero polynomial".into(),
        ));
    }
    let w = q.scale(&C64::new(1.0 / qscale, 0.0));
    let wc: Vec<C64> = (0..5).map(|k| w.coeff(k)).collect();
    let rts = crate::roots::roots(&w)?;
    if rts.len() != 4 {
        return Err(Error::CertificationFailed(format!(
            "expected a degree-four restriction, found {} roots",
            rts.len()
        )));
    }
    let pairings = [
        [(0usize, 1usize), (2, 3)],
        [(0, 2), (1, 3)],
        [(0, 3), (1, 2)],
    ];
    let mut best: Option<SquareFit> = None;
    for pr in &pairings {
        let m1 = (rts[pr[0].0] + rts[pr[0].1]) * 0.5;
        let m2 = (rts[pr[1].0] + rts[pr[1].1]) * 0.5;
        let mut z = [wc[4], -(m1 + m2), m1 * m2];
        let mut local_best = f64::INFINITY;
        let mut local_z = z;
        let mut stall = 0usize;
        for _ in 0..40 {
            let (c, be, ga) = (z[0], z[1], z[2]);
            let e = [ga * ga, 2.0 * be * ga, be * be + 2.0 * ga, 2.0 * be, cone()];
            let de_b = [czero(), 2.0 * ga, 2.0 * be, C64::new(2.0, 0.0), czero()];
            let de_g = [2.0 * ga, 2.0 * be, C64::new(2.0, 0.0), czero(), czero()];
            let r = nalgebra::DVector::from_iterator(5, (0..5).map(|k| wc[k] - c * e[k]));
            let rn = r.iter().map(|x| x.norm()).fold(0.0f64, f64::max);
            if rn < 0.9 * local_best {
                local_best = rn;
                local_z = z;
                stall = 0;
            } else {
                stall += 1;
                if stall > 4 {
                    break;
                }
            }
            let j = DMatrix::from_fn(5, 3, |k, col| match col {
                0 => -e[k],
                1 => -c * de_b[k],
                _ => -c * de_g[k],
            });
            let normal = j.adjoint() * &j;
            let rhs = -(j.adjoint() * &r);
            let Some(delta) = normal.lu().solve(&rhs) else {
                break;
            };
            for i in 0..3 {
                z[i] += delta[i];
            }
            if delta.iter().map(|x| x.norm()).sum::<f64>() < 1e-15 {
                // One more residual evaluation records the converged point.
                continue;
            }
        }
        // Final residual at the best iterate.
        let (c, be, ga) = (local_z[0], local_z[1], local_z[2]);
        let e = [ga * ga, 2.0 * be * ga, be * be + 2.0 * ga, 2.0 * be, cone()];
        let rn = (0..5)
            .map(|k| (wc[k] - c * e[k]).norm())
            .fold(0.0f64, f64::max);
        if best.as_ref().map_or(true, |b| rn < b.residual) {
            best = Some(SquareFit {
                scale: c * qscale,
                beta: be,
                gamma: ga,
                residual: rn,
            });
        }
    }
    best.ok_or_else(|| Error::CertificationFailed("square-root fit produced no iterate".into()))
}

/// Roots of the fitted monic quadratic, sorted by the deterministic
/// `(re, im)` key.
fn contact_parameters(beta: C64, gamma: C64) -> (C64, C64) {
    let disc = beta * beta - 4.0 * gamma;
    let s = disc.sqrt();
    let mut t1 = (-beta - s) * 0.5;
    let mut t2 = (-beta + s) * 0.5;
    // Recompute the smaller root from the product when that is stabler.
    if t1.norm() > 1.0e-3 && t1.norm() >= t2.norm() {
        t2 = gamma / t1;
    } else if t2.norm() > 1.0e-3 && t2.norm() > t1.norm() {
        t1 = gamma / t2;
    }
    let key = |t: &C64| (t.re, t.im);
    if key(&t2) < key(&t1) {
        std::mem::swap(&mut t1, &mut t2);
    }
    (t1, t2)
}

/// Everything `certify_bitangent` needs that does not depend on the ambient
/// dimension: the certified restriction on a concrete spanning pair.
struct SpanCertificate {
    a: Vec<C64>,
    b: Vec<C64>,
    quartic: UniPoly<C64>,
    square_root: UniPoly<C64>,
    scale: C64,
    t1: C64,
    t2: C64,
    hyperflex: bool,
    fit_residual: f64,
    gate: (f64, f64),
}

fn certify_span(f: &MultiPoly<C64>, a_in: &[C64], b_in: &[C64]) -> Result<SpanCertificate> {
    let a = ProjPoint::new(a_in.to_vec())?
        .normalized()
        .coords()
        .to_vec();
    let mut b = ProjPoint::new(b_in.to_vec())?
        .normalized()
        .coords()
        .to_vec();
    let fl1 = f.coeff_l1();
    let mut q4 = line_poly(f, &a, &b, 4);
    if q4.norm_inf() <= tol::LINE_IN_SURFACE_REL * fl1 {
        return Err(Error::Degenerate(
            "the line lies inside the zero locus".into(),
        ));
    }
    if q4.coeff(4).magnitude() < RESPAN_LEAD_REL * q4.norm_inf() {
        // The second spanning point sits on the locus; shear it along the
        // line until the restriction has honest degree four.
        let shifts = [
            C64::new(0.5, 0.0),
            C64::new(-0.5, 0.0),
            C64::new(0.25, 0.5),
            C64::new(-0.75, 0.25),
            C64::new(1.5, -0.5),
        ];
        let mut found = false;
        for kappa in shifts {
            let cand: Vec<C64> = (0..a.len()).map(|i| b[i] + kappa * a[i]).collect();
            let Ok(cpt) = ProjPoint::new(cand) else {
                continue;
            };
            let cnorm = cpt.normalized().coords().to_vec();
            let qc = line_poly(f, &a, &cnorm, 4);
            if qc.norm_inf() > 0.0 && qc.coeff(4).magnitude() >= RESPAN_LEAD_REL * qc.norm_inf() {
                b = cnorm;
                q4 = qc;
                found = true;
                break;
            }
        }
        if !found {
            return Err(Error::Degenerate(
                "no spanning pair gives a degree-four restriction".into(),
            ));
        }
    }
    let dq = q4.derivative();
    let (s0, s1) = subresultant_pair(&q4)?;
    let norm2 = |p: &UniPoly<C64>| p.coeffs().iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
    let qn = norm2(&q4);
    let dn = norm2(&dq);
    let rel0 = s0.magnitude() / (qn.powi(3) * dn.powi(4)).max(1e-300);
    let rel1 = s1.magnitude() / (qn.powi(2) * dn.powi(3)).max(1e-300);
    if rel0 > tol::BITANGENT_GATE_REL || rel1 > tol::BITANGENT_GATE_REL {
        return Err(Error::CertificationFailed(format!(
            "subresultant screen ({:.2e}, {:.2e}) exceeds {:.0e}",
            rel0,
            rel1,
            tol::BITANGENT_GATE_REL
        )));
    }
    let fit = fit_square_root(&q4)?;
    if fit.residual > tol::CERT_RESIDUAL {
        return Err(Error::CertificationFailed(format!(
            "square-root fit residual {:.2e} exceeds {:.0e}",
            fit.residual,
            tol::CERT_RESIDUAL
        )));
    }
    let (t1, t2) = contact_parameters(fit.beta, fit.gamma);
    let hyperflex = (t1 - t2).norm() <= tol::CONTACT_MERGE * (1.0 + t1.norm() + t2.norm());
    Ok(SpanCertificate {
        a,
        b,
        quartic: q4,
        square_root: UniPoly::new(vec![fit.gamma, fit.beta, cone()]),
        scale: fit.scale,
        t1,
        t2,
        hyperflex,
        fit_residual: fit.residual,
        gate: (rel0, rel1),
    })
}

/// Certify that a line is a bitangent of the surface.
///
/// On success the certificate stores the restriction, its square root, the
/// contact points, and all residuals.  Lines contained in the surface are
/// rejected as degenerate; lines whose restriction is not a square within
/// [`tol::CERT_RESIDUAL`] fail with [`Error::CertificationFailed`].  The
/// span may be sheared internally when the input parameterization puts a
/// contact at `t = ∞`; the certificate's own `line` records the span
/// actually used.
pub fn certify_bitangent(
    surface: &QuarticSurface,
    line: &PlueckerLine,
) -> Result<BitangentCertificate> {
    let (a0, b0) = line.span();
    let sc = certify_span(surface.f(), a0.coords(), b0.coords())?;
    let line_used =
        PlueckerLine::through(ProjPoint::new(sc.a.clone())?, ProjPoint::new(sc.b.clone())?)?;
    let p1 = line_used.point_at(sc.t1);
    let p2 = line_used.point_at(sc.t2);
    let contact_surface_residual = surface
        .on_surface_residual(&p1)
        .max(surface.on_surface_residual(&p2));
    Ok(BitangentCertificate {
        line: line_used,
        quartic: sc.quartic,
        square_root: sc.square_root,
        scale: sc.scale,
        contact: [(sc.t1, p1), (sc.t2, p2)],
        hyperflex: sc.hyperflex,
        fit_residual: sc.fit_residual,
        gate_residuals: sc.gate,
        contact_surface_residual,
    })
}

/// Hermitian-orthonormal basis of the orthogonal complement of `p` in C^4,
/// chosen deterministically (coordinate vectors with the largest residuals
/// after projecting `p` out, then Gram-Schmidt in that order).
fn complement_basis(p: &[C64]) -> [Vec<C64>; 3] {
    let dot = |u: &[C64], v: &[C64]| -> C64 { u.iter().zip(v).map(|(a, b)| a.conj() * b).sum() };
    let nrm = |u: &[C64]| -> f64 { u.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt() };
    let mut u0 = p.to_vec();
    let n = nrm(&u0);
    for c in u0.iter_mut() {
        *c /= n;
    }
    let mut residuals: Vec<(usize, Vec<C64>, f64)> = (0..4)
        .map(|i| {
            let mut e: Vec<C64> = vec![czero(); 4];
            e[i] = cone();
            let d = dot(&u0, &e);
            for (k, c) in e.iter_mut().enumerate() {
                *c -= d * u0[k];
            }
            let r = nrm(&e);
            (i, e, r)
        })
        .collect();
    residuals.sort_by(|x, y| y.2.total_cmp(&x.2).then(x.0.cmp(&y.0)));
    let mut basis: Vec<Vec<C64>> = Vec::with_capacity(3);
    for (_, mut v, _) in residuals.into_iter().take(3) {
        for w in &basis {
            let d = dot(w, &v);
            for (k, c) in v.iter_mut().enumerate() {
                *c -= d * w[k];
            }
        }
        let r = nrm(&v);
        for c in v.iter_mut() {
            *c /= r;
        }
        basis.push(v);
    }
    [basis[0].clone(), basis[1].clone(), basis[2].clone()]
}

pub(crate) fn key_cmp(x: &[(f64, f64)], y: &[(f64, f64)]) -> std::cmp::Ordering {
    for (a, b) in x.iter().zip(y) {
        let o = a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1));
        if o != std::cmp::Ordering::Equal {
            return o;
        }
    }
    std::cmp::Ordering::Equal
}

/// All bitangents of the surface through a base point.
///
/// Directions of lines through `p` are parameterized over a fixed
/// Hermitian complement of `p` — the direction plane `P(C^4/⟨p⟩)` — in
/// three affine charts; in each chart the two doubled-contact conditions
/// are built symbolically and solved with the bivariate solver, and every
/// candidate line is then certified independently.  For a generic base
/// point the certified fiber has twelve lines; for a base point on the
/// surface it has six, each tangent at the base point itself.  A
/// positive-dimensional candidate family (non-generic surfaces) surfaces
/// as [`Error::CommonFactor`].
pub fn bitangents_through_point(
    surface: &QuarticSurface,
    p: &ProjPoint<C64>,
    seed: u64,
) -> Result<FiberReport> {
    let pn = p.normalized();
    let pc = pn.coords().to_vec();
    let base_on_surface = surface.on_surface_residual(&pn) <= 1e-8;
    let w = complement_basis(&pc);
    let zero4 = vec![czero(); 4];
    let mut lines: Vec<PlueckerLine> = Vec::new();
    for chart in 0..3usize {
        let (ci, cj) = match chart {
            0 => (1, 2),
            1 => (0, 2),
            _ => (0, 1),
        };
        let c = pencil_restriction(
            surface.f(),
            [&pc, &zero4, &zero4],
            [&w[chart], &w[ci], &w[cj]],
        );
        let sols = double_contact_candidates(
            &c,
            base_on_surface,
            seed ^ 0x9e37_79b9_7f4a_7c15u64.wrapping_mul(chart as u64 + 1),
        )?;
        for (sx, sy) in sols {
            let rough: Vec<C64> = c.iter().map(|ck| ck.eval(&sx, &sy)).collect();
            let Ok(fit) = fit_square_root(&UniPoly::new(rough)) else {
                continue;
            };
            let (t1, t2) = contact_parameters(fit.beta, fit.gamma);
            let (x, y) = polish_double_contact(&c, base_on_surface, (sx, sy, t1, t2));
            let d: Vec<C64> = (0..4)
                .map(|i| w[chart][i] + x * w[ci][i] + y * w[cj][i])
                .collect();
            let Ok(dp) = ProjPoint::new(d) else { continue };
            let Ok(l) = PlueckerLine::through(pn.clone(), dp) else {
                continue;
            };
            if lines
                .iter()
                .all(|e| e.proj_distance(&l) > tol::SOLUTION_DEDUP)
            {
                lines.push(l);
            }
        }
    }
    let raw_candidates = lines.len();
    let mut bitangents: Vec<BitangentCertificate> = Vec::new();
    let mut rejected = 0usize;
    for l in lines {
        match certify_bitangent(surface, &l) {
            Ok(cert) => {
                if bitangents
                    .iter()
                    .all(|c| c.line.proj_distance(&cert.line) > tol::SOLUTION_DEDUP)
                {
                    bitangents.push(cert);
                }
            }
            Err(_) => rejected += 1,
        }
    }
    bitangents.sort_by(|x, y| key_cmp(&x.line.sort_key(), &y.line.sort_key()));
    Ok(FiberReport {
        base_point: pn,
        base_on_surface,
        raw_candidates,
        rejected,
        bitangents,
    })
}

/// The bitangents tangent to the surface *at* a given surface point.
///
/// Lines through `p ∈ X` inside the tangent plane meet `X` doubly at `p`;
/// writing the restriction along `p + t(u b₁ + v b₂)` as
/// `t²(c₂ + c₃ t + c₄ t²)`, such a line is a bitangent exactly when the
/// residual quadratic has a double root — the vanishing of the binary
/// sextic `c₃² − 4 c₂ c₄` in the in-plane direction `(u : v)`.  Six roots,
/// hence six bitangents, for a generic surface point.
pub fn bitangents_tangent_at(
    surface: &QuarticSurface,
    p: &ProjPoint<C64>,
) -> Result<Vec<BitangentCertificate>> {
    let plane = geometry::tangent_plane(surface, p)?;
    let pn = plane.basis[0].clone();
    let pc = pn.coords().to_vec();
    let b1 = plane.basis[1].coords().to_vec();
    let b2 = plane.basis[2].coords().to_vec();
    let zero4 = vec![czero(); 4];
    let c = pencil_restriction(surface.f(), [&pc, &zero4, &zero4], [&zero4, &b1, &b2]);
    let disc = c[3]
        .mul(&c[3])
        .sub(&c[2].mul(&c[4]).scale(&C64::new(4.0, 0.0)));
    let form: Vec<C64> = (0..=6).map(|k| disc.coeff(6 - k, k)).collect();
    let dirs = crate::singularities::binary_form_directions(&form);
    let mut out: Vec<BitangentCertificate> = Vec::new();
    for (u, v, _mult) in dirs {
        let d: Vec<C64> = (0..4).map(|i| u * b1[i] + v * b2[i]).collect();
        let Ok(dp) = ProjPoint::new(d) else { continue };
        let Ok(l) = PlueckerLine::through(pn.clone(), dp) else {
            continue;
        };
        if let Ok(cert) = certify_bitangent(surface, &l) {
            if out
                .iter()
                .all(|c| c.line.proj_distance(&cert.line) > tol::SOLUTION_DEDUP)
            {
                out.push(cert);
            }
        }
    }
    out.sort_by(|x, y| key_cmp(&x.line.sort_key(), &y.line.sort_key()));
    Ok(out)
}

/// A bitangent moved to normal form: coordinates adapted to the line so
/// that it becomes `{y₂ = y₃ = 0}` with contact parameters `{0, λ}`.
///
/// The frame is `(P, D, v₂, v₃)`: `P` the first contact point, `D` the
/// direction (second contact at `P + λD`), and `(v₂, v₃)` a Hermitian-
/// orthonormal transverse pair.  The cubics `g, h` are the transverse
/// gradient components along the line,
/// `g(τ) = ⟨∇F(P + τD), v₂⟩`, `h(τ) = ⟨∇F(P + τD), v₃⟩`;
/// first-order motion of the line preserves both double contacts exactly
/// when the tangency system built from `g, h` (see [`tangent_space_of_s`])
/// annihilates it.  For a hyperflex `λ = 0` and the second condition is
/// taken in the derivative.
#[derive(Debug, Clone)]
pub struct LineNormalForm {
    /// First contact point representative (`τ = 0`).
    pub base: Vec<C64>,
    /// Direction representative; the second contact is `base + λ·direction`.
    pub direction: Vec<C64>,
    /// Hermitian-orthonormal pair spanning a transverse complement.
    pub transverse: [Vec<C64>; 2],
    /// Second contact parameter in the `(base, direction)` frame.
    pub lambda: C64,
    /// `τ ↦ ⟨∇F(base + τ·direction), v₂⟩`, a cubic.
    pub g: UniPoly<C64>,
    /// `τ ↦ ⟨∇F(base + τ·direction), v₃⟩`, a cubic.
    pub h: UniPoly<C64>,
    /// Whether the two contacts coincide (`λ = 0` branch).
    pub hyperflex: bool,
}

fn directional_gradient(surface: &QuarticSurface, v: &[C64]) -> Option<MultiPoly<C64>> {
    let grad = surface.grad();
    let mut acc: Option<MultiPoly<C64>> = None;
    for (i, vi) in v.iter().enumerate() {
        if vi.norm() == 0.0 {
            continue;
        }
        let term = grad[i].scale(vi);
        acc = Some(match acc {
            None => term,
            Some(s) => s.add(&term).expect("gradient components share shape"),
        });
    }
    acc
}

fn transverse_pair(
    base: &[C64],
    dir: &[C64],
    completion_seed: Option<u64>,
) -> Result<[Vec<C64>; 2]> {
    use rand::{Rng, SeedableRng};
    let dot = |u: &[C64], v: &[C64]| -> C64 { u.iter().zip(v).map(|(a, b)| a.conj() * b).sum() };
    let nrm = |u: &[C64]| -> f64 { u.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt() };
    let mut u1 = base.to_vec();
    let n1 = nrm(&u1);
    if n1 == 0.0 {
        return Err(Error::Degenerate("zero base point".into()));
    }
    for c in u1.iter_mut() {
        *c /= n1;
    }
    let mut u2 = dir.to_vec();
    let d = dot(&u1, &u2);
    for (k, c) in u2.iter_mut().enumerate() {
        *c -= d * u1[k];
    }
    let n2 = nrm(&u2);
    if n2 <= 1e-12 {
        return Err(Error::ProportionalPoints);
    }
    for c in u2.iter_mut() {
        *c /= n2;
    }
    let project = |mut v: Vec<C64>, against: &[Vec<C64>]| -> (Vec<C64>, f64) {
        for w in against {
            let d = dot(w, &v);
            for (k, c) in v.iter_mut().enumerate() {
                *c -= d * w[k];
            }
        }
        let r = nrm(&v);
        (v, r)
    };
    let mut picked: Vec<Vec<C64>> = Vec::with_capacity(2);
    match completion_seed {
        None => {
            let mut candidates: Vec<(usize, Vec<C64>, f64)> = (0..4)
                .map(|i| {
                    let mut e = vec![czero(); 4];
                    e[i] = cone();
                    let (v, r) = project(e, &[u1.clone(), u2.clone()]);
                    (i, v, r)
                })
                .collect();
            candidates.sort_by(|x, y| y.2.total_cmp(&x.2).then(x.0.cmp(&y.0)));
            for (_, v, _) in candidates.into_iter().take(2) {
                let mut frame = vec![u1.clone(), u2.clone()];
                frame.extend(picked.iter().cloned());
                let (mut w, r) = project(v, &frame);
                if r <= 1e-12 {
                    return Err(Error::Degenerate("transverse completion collapsed".into()));
                }
                for c in w.iter_mut() {
                    *c /= r;
                }
                picked.push(w);
            }
        }
        Some(seed) => {
            let mut rng = rand_chacha::ChaCha20Rng::seed_from_u64(seed ^ 0x7a2e_51b3);
            while picked.len() < 2 {
                let v: Vec<C64> = (0..4)
                    .map(|_| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                    .collect();
                let mut frame = vec![u1.clone(), u2.clone()];
                frame.extend(picked.iter().cloned());
                let (mut w, r) = project(v, &frame);
                if r <= 1e-6 {
                    continue;
                }
                for c in w.iter_mut() {
                    *c /= r;
                }
                picked.push(w);
            }
        }
    }
    Ok([picked[0].clone(), picked[1].clone()])
}

/// Normal-form data for a certified bitangent, with the deterministic
/// transverse completion.
pub fn line_normal_form(
    surface: &QuarticSurface,
    cert: &BitangentCertificate,
) -> Result<LineNormalForm> {
    line_normal_form_seeded(surface, cert, None)
}

/// Normal-form data with a seeded random transverse completion; the rank
/// computed by [`tangent_space_of_s`] is independent of this gauge choice,
/// and tests exercise that invariance.
pub fn line_normal_form_seeded(
    surface: &QuarticSurface,
    cert: &BitangentCertificate,
    completion_seed: Option<u64>,
) -> Result<LineNormalForm> {
    let (a, b) = cert.line.span();
    let t1 = cert.contact[0].0;
    let t2 = cert.contact[1].0;
    let base: Vec<C64> = a
        .coords()
        .iter()
        .zip(b.coords())
        .map(|(ai, bi)| ai + t1 * bi)
        .collect();
    let direction = b.coords().to_vec();
    let lambda = if cert.hyperflex { czero() } else { t2 - t1 };
    let transverse = transverse_pair(&base, &direction, completion_seed)?;
    let g = match directional_gradient(surface, &transverse[0]) {
        Some(m) => line_poly(&m, &base, &direction, 3),
        None => UniPoly::zero(),
    };
    let h = match directional_gradient(surface, &transverse[1]) {
        Some(m) => line_poly(&m, &base, &direction, 3),
        None => UniPoly::zero(),
    };
    Ok(LineNormalForm {
        base,
        direction,
        transverse,
        lambda,
        g,
        h,
        hyperflex: cert.hyperflex,
    })
}

/// Rows of the first-order tangency system in the unknowns
/// `(α, β, γ, δ)`: the perturbed line is spanned by
/// `P + ε(α v₂ + β v₃)` and `D + ε(γ v₂ + δ v₃)`, and the perturbation of
/// the restriction, `ρ(τ) = (α + τγ) g(τ) + (β + τδ) h(τ)`, must vanish at
/// both contact parameters — at `τ = 0` to second order for a hyperflex.
fn tangency_rows(nf: &LineNormalForm) -> [[C64; 4]; 2] {
    let z = czero();
    let g0 = nf.g.eval(&z);
    let h0 = nf.h.eval(&z);
    let row0 = [g0, h0, z, z];
    let row1 = if nf.hyperflex {
        let g1 = nf.g.derivative().eval(&z);
        let h1 = nf.h.derivative().eval(&z);
        [g1, h1, g0, h0]
    } else {
        let gl = nf.g.eval(&nf.lambda);
        let hl = nf.h.eval(&nf.lambda);
        [gl, hl, nf.lambda * gl, nf.lambda * hl]
    };
    [row0, row1]
}

/// The tangency system of a bitangent and its rank.
///
/// The variety of bitangents is smooth of dimension two at the line exactly
/// when the rank is 2; a contact point that is a singular point of the
/// surface zeroes a whole row and drops the rank to 1 or 0.
#[derive(Debug, Clone)]
pub struct TangentSpaceReport {
    /// Rank of the 2×4 tangency system.
    pub rank: usize,
    /// Its two singular values (descending).
    pub singular_values: [f64; 2],
    /// Basis of the kernel: the first-order motions of the line preserving
    /// both contacts (`4 − rank` vectors in the `(α, β, γ, δ)` frame).
    pub kernel: Vec<[C64; 4]>,
    /// The normal-form data the system was built from.
    pub normal_form: LineNormalForm,
}

/// Tangency system with the deterministic transverse gauge.
pub fn tangent_space_of_s(
    surface: &QuarticSurface,
    cert: &BitangentCertificate,
) -> Result<TangentSpaceReport> {
    tangent_space_of_s_seeded(surface, cert, None)
}

/// Tangency system with a seeded transverse gauge (rank is gauge-invariant).
pub fn tangent_space_of_s_seeded(
    surface: &QuarticSurface,
    cert: &BitangentCertificate,
    completion_seed: Option<u64>,
) -> Result<TangentSpaceReport> {
    let nf = line_normal_form_seeded(surface, cert, completion_seed)?;
    let rows = tangency_rows(&nf);
    let entry_scale = rows
        .iter()
        .flatten()
        .map(|c| c.norm())
        .fold(0.0f64, f64::max);
    let gh_scale = (nf.g.norm_inf() + nf.h.norm_inf()) * (1.0 + nf.lambda.norm()).powi(3) + 1e-300;
    let m = DMatrix::from_fn(2, 4, |r, c| rows[r][c]);
    // Kernel via the 4×4 normal matrix: the compact SVD of a wide matrix
    // does not return the null space.
    let normal = m.adjoint() * &m;
    let svd = normal.svd(false, true);
    let sv = &svd.singular_values;
    let s1 = sv[0].max(0.0).sqrt();
    let s2 = sv[1].max(0.0).sqrt();
    let mut rank = 0usize;
    if entry_scale > 1e-12 * gh_scale {
        rank = 1;
        if s2 > tol::RANK_SVD_REL * s1 {
            rank = 2;
        }
    }
    let vt = svd.v_t.expect("requested right singular vectors");
    let kernel: Vec<[C64; 4]> = (rank..4)
        .map(|r| std::array::from_fn(|c| vt[(r, c)].conj()))
        .collect();
    Ok(TangentSpaceReport {
        rank,
        singular_values: [s1, s2],
        kernel,
        normal_form: nf,
    })
}

/// The ramification determinant of the evaluation map along a bitangent.
///
/// In the normal-form chart the evaluation map sends (line of the family,
/// parameter `t`) to the ambient point; its 3×3 Jacobian determinant along
/// the central line reduces to a quadratic `D(t)` built from a kernel basis
/// of the tangency system.  `D` factors as `lead · t (t − λ)` — it vanishes
/// exactly at the two contact parameters — and its leading coefficient is a
/// unit multiple of `Δ = g(0)h(λ) − g(λ)h(0)` divided by the pivot minor.
/// `Δ` (relative form `delta_rel`) is the obstruction to the *whole* line
/// ramifying: `delta_rel ≈ 0` means `D ≡ 0`, the signature of a line whose
/// every point is a doubled contact of the tangent plane — a Gauss double
/// line.
#[derive(Debug, Clone)]
pub struct RamificationReport {
    /// Second contact parameter of the normal form.
    pub lambda: C64,
    /// `Δ = g(0)h(λ) − g(λ)h(0)`.
    pub delta: C64,
    /// `|Δ|` relative to the sizes of `g, h` at the contacts.
    pub delta_rel: f64,
    /// Which of the four pivot charts solved the kernel (0 = `(β,δ)`,
    /// 1 = `(α,γ)`, 2 = `(β,γ)`, 3 = `(α,δ)`).
    pub pivot_chart: usize,
    /// The pivot minor of that chart.
    pub pivot: C64,
    /// The determinant `D(t)` as a quadratic.
    pub quadratic: UniPoly<C64>,
    /// Sup-norm residual of `D(t) − lead·t(t−λ)` over the sample set,
    /// relative to the larger of the two; 0 when `D ≡ 0`.
    pub factor_residual: f64,
    /// Size of `D` relative to the kernel-basis scale; near zero exactly
    /// when the map ramifies along the whole line.
    pub whole_line_measure: f64,
}

impl RamificationReport {
    /// Evaluate the ramification determinant at a parameter value.
    pub fn det_at(&self, t: C64) -> C64 {
        self.quadratic.eval(&t)
    }
}

/// Compute the ramification determinant data of a certified bitangent,
/// checking the `t(t−λ)` factorization on `samples` deterministic points
/// (plus the two contact parameters themselves).
pub fn ramification_report(
    surface: &QuarticSurface,
    cert: &BitangentCertificate,
    samples: usize,
) -> Result<RamificationReport> {
    let nf = line_normal_form(surface, cert)?;
    let rows = tangency_rows(&nf);
    let pairs: [[usize; 2]; 4] = [[1, 3], [0, 2], [1, 2], [0, 3]];
    let mut chart = 0usize;
    let mut pivot = czero();
    for (idx, pr) in pairs.iter().enumerate() {
        let det = rows[0][pr[0]] * rows[1][pr[1]] - rows[0][pr[1]] * rows[1][pr[0]];
        if det.norm() > pivot.norm() {
            pivot = det;
            chart = idx;
        }
    }
    let entry_scale = rows
        .iter()
        .flatten()
        .map(|c| c.norm())
        .fold(0.0f64, f64::max);
    if pivot.norm() <= 1e-12 * entry_scale * entry_scale + 1e-300 {
        return Err(Error::ChartFailure(
            "the tangency system is singular in all four pivot charts".into(),
        ));
    }
    let solved = pairs[chart];
    let free: Vec<usize> = (0..4).filter(|i| !solved.contains(i)).collect();
    let mut ks: Vec<[C64; 4]> = Vec::with_capacity(2);
    for &fidx in &free {
        let rhs = [-rows[0][fidx], -rows[1][fidx]];
        let a = rows[0][solved[0]];
        let b = rows[0][solved[1]];
        let c = rows[1][solved[0]];
        let d = rows[1][solved[1]];
        let x0 = (rhs[0] * d - b * rhs[1]) / pivot;
        let x1 = (a * rhs[1] - rhs[0] * c) / pivot;
        let mut k = [czero(); 4];
        k[fidx] = cone();
        k[solved[0]] = x0;
        k[solved[1]] = x1;
        ks.push(k);
    }
    // D(t) = κ₁μ₂ − κ₂μ₁ with κ = α + tγ and μ = β + tδ per kernel vector.
    let (a1, b1, g1, d1) = (ks[0][0], ks[0][1], ks[0][2], ks[0][3]);
    let (a2, b2, g2, d2) = (ks[1][0], ks[1][1], ks[1][2], ks[1][3]);
    let c0 = a1 * b2 - a2 * b1;
    let c1 = a1 * d2 - a2 * d1 + g1 * b2 - g2 * b1;
    let c2 = g1 * d2 - g2 * d1;
    let quadratic = UniPoly::new(vec![c0, c1, c2]);
    let z = czero();
    let g_0 = nf.g.eval(&z);
    let g_l = nf.g.eval(&nf.lambda);
    let h_0 = nf.h.eval(&z);
    let h_l = nf.h.eval(&nf.lambda);
    let delta = g_0 * h_l - g_l * h_0;
    let delta_rel =
        delta.norm() / (g_0.norm().max(g_l.norm()) * h_0.norm().max(h_l.norm())).max(1e-300);
    let k_scale = (1.0 + ks[0].iter().map(|c| c.norm()).fold(0.0f64, f64::max))
        * (1.0 + ks[1].iter().map(|c| c.norm()).fold(0.0f64, f64::max))
        * (1.0 + nf.lambda.norm()).powi(2);
    let model = |t: C64| c2 * t * (t - nf.lambda);
    let radius = 1.0 + nf.lambda.norm();
    let center = nf.lambda * 0.5;
    let mut ts: Vec<C64> = (0..samples.max(2))
        .map(|j| center + C64::from_polar(radius, TAU * j as f64 / samples.max(2) as f64))
        .collect();
    ts.push(czero());
    ts.push(nf.lambda);
    let mut sup = 0.0f64;
    let mut sup_res = 0.0f64;
    for t in ts {
        let dv = quadratic.eval(&t);
        let mv = model(t);
        sup = sup.max(dv.norm()).max(mv.norm());
        sup_res = sup_res.max((dv - mv).norm());
    }
    let whole_line_measure = sup / k_scale;
    let factor_residual = if sup > 1e-12 * k_scale {
        sup_res / sup
    } else {
        0.0
    };
    Ok(RamificationReport {
        lambda: nf.lambda,
        delta,
        delta_rel,
        pivot_chart: chart,
        pivot,
        quadratic,
        factor_residual,
        whole_line_measure,
    })
}

/// A certified bitangent line of a plane quartic curve.
#[derive(Debug, Clone)]
pub struct PlaneBitangent {
    /// The line `{a x₀ + b x₁ + c x₂ = 0}` as the dual point `(a : b : c)`.
    pub dual: ProjPoint<C64>,
    /// Contact parameters and points on the curve, in the certificate's
    /// internal span of the line.
    pub contact: [(C64, ProjPoint<C64>); 2],
    /// Restriction of the curve to the line.
    pub quartic: UniPoly<C64>,
    /// Monic quadratic square root of the restriction.
    pub square_root: UniPoly<C64>,
    /// Leading factor of the certified square.
    pub scale: C64,
    /// Fit residual of the factorization.
    pub fit_residual: f64,
    /// True for a quadruple contact.
    pub hyperflex: bool,
}

/// Bitangents of a plane quartic, with raw/filtered bookkeeping.
#[derive(Debug, Clone)]
pub struct PlaneBitangentReport {
    /// Certified bitangents sorted by dual point.
    pub bitangents: Vec<PlaneBitangent>,
    /// Distinct dual candidates before certification (simple-flex tangent
    /// lines solve the same two conditions and are rejected here).
    pub raw_candidates: usize,
    /// Candidates rejected by certification.
    pub rejected: usize,
}

/// All bitangent lines of a smooth plane quartic curve.
///
/// The dual plane is covered by three affine charts; in each, the line is
/// spanned by two moving points, the doubled-contact conditions are built
/// symbolically, and solutions are merged across charts and certified.  A
/// smooth plane quartic has exactly 28 bitangents, and the rejected
/// candidates are its simple-flex tangent lines.
pub fn plane_quartic_bitangents(curve: &MultiPoly<C64>, seed: u64) -> Result<PlaneBitangentReport> {
    if curve.num_vars() != 3 || curve.degree() != 4 || curve.is_zero() {
        return Err(Error::InvalidPolynomial(
            "plane bitangents expect a nonzero ternary quartic".into(),
        ));
    }
    // Two passes over the dual charts: the input coordinates, and a seeded
    // linear change of them.  Highly symmetric curves stack many solutions
    // over shared resultant abscissae in their natural coordinates, which
    // ruins the cluster accuracy of the elimination step, while a generic
    // change can land an unlucky pair of solutions poorly in every chart;
    // the union over both coordinate systems leaves neither failure mode a
    // place to hide.  All reported quantities live in the input coordinates.
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha20Rng::seed_from_u64(seed ^ 0x3c6e_f372_fe94_f82a);
    let mut m = [[czero(); 3]; 3];
    // Unitary via Gram-Schmidt: an arbitrary invertible change would inflate
    // the coefficient dynamic range of the composed curve and drown shallow
    // discriminant valleys in interpolation noise.
    'draw: loop {
        for row in m.iter_mut() {
            for entry in row.iter_mut() {
                *entry = C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            }
        }
        for i in 0..3 {
            for j in 0..i {
                let prev = m[j];
                let dot: C64 = (0..3).map(|k| prev[k].conj() * m[i][k]).sum();
                for k in 0..3 {
                    m[i][k] -= dot * prev[k];
                }
            }
            let n = (0..3).map(|k| m[i][k].norm_sqr()).sum::<f64>().sqrt();
            if n < 1e-3 {
                continue 'draw;
            }
            for k in 0..3 {
                m[i][k] /= n;
            }
        }
        break;
    }
    let images = (0..3)
        .map(|i| {
            MultiPoly::new(
                3,
                1,
                vec![
                    (vec![1, 0, 0], m[i][0]),
                    (vec![0, 1, 0], m[i][1]),
                    (vec![0, 0, 1], m[i][2]),
                ],
            )
        })
        .collect::<Result<Vec<_>>>()?;
    let mut identity = [[czero(); 3]; 3];
    for (i, row) in identity.iter_mut().enumerate() {
        row[i] = cone();
    }
    let passes: [([[C64; 3]; 3], MultiPoly<C64>); 2] = [
        (identity, curve.clone()),
        (m, curve.compose_linear(&images)?),
    ];
    let e = |i: usize| -> Vec<C64> {
        let mut v = vec![czero(); 3];
        v[i] = cone();
        v
    };
    let zero3 = vec![czero(); 3];
    let neg = |v: Vec<C64>| -> Vec<C64> { v.into_iter().map(|c| -c).collect() };
    // Chart k pins the k-th dual coordinate to one.  Spanning points:
    //   k = 0: A = (−u, 1, 0), B = (−v, 0, 1)   (dual (1 : u : v))
    //   k = 1: A = (1, −u, 0), B = (0, −v, 1)   (dual (u : 1 : v))
    //   k = 2: A = (1, 0, −u), B = (0, 1, −v)   (dual (u : v : 1))
    let charts: [([Vec<C64>; 3], [Vec<C64>; 3]); 3] = [
        (
            [e(1), neg(e(0)), zero3.clone()],
            [e(2), zero3.clone(), neg(e(0))],
        ),
        (
            [e(0), neg(e(1)), zero3.clone()],
            [e(2), zero3.clone(), neg(e(1))],
        ),
        (
            [e(0), neg(e(2)), zero3.clone()],
            [e(1), zero3.clone(), neg(e(2))],
        ),
    ];
    let mut candidates: Vec<(ProjPoint<C64>, Vec<C64>, Vec<C64>)> = Vec::new();
    for (pass, (map, form)) in passes.iter().enumerate() {
        for (k, (atr, btr)) in charts.iter().enumerate() {
            let c = pencil_restriction(
                form,
                [&atr[0], &atr[1], &atr[2]],
                [&btr[0], &btr[1], &btr[2]],
            );
            let sols = double_contact_candidates(
                &c,
                false,
                seed ^ 0xd1b5_4a32_d192_ed03u64.wrapping_mul((3 * pass + k) as u64 + 1),
            )?;
            for (sx, sy) in sols {
                let rough: Vec<C64> = c.iter().map(|ck| ck.eval(&sx, &sy)).collect();
                let Ok(fit) = fit_square_root(&UniPoly::new(rough)) else {
                    continue;
                };
                let (t1, t2) = contact_parameters(fit.beta, fit.gamma);
                let (x, y) = polish_double_contact(&c, false, (sx, sy, t1, t2));
                // Span in pass coordinates, pushed forward to the input
                // ones; the dual covector is the cross product of the two
                // span points.
                let sa: Vec<C64> = (0..3)
                    .map(|i| atr[0][i] + x * atr[1][i] + y * atr[2][i])
                    .collect();
                let sb: Vec<C64> = (0..3)
                    .map(|i| btr[0][i] + x * btr[1][i] + y * btr[2][i])
                    .collect();
                let push = |s: &[C64]| -> Vec<C64> {
                    (0..3)
                        .map(|i| map[i][0] * s[0] + map[i][1] * s[1] + map[i][2] * s[2])
                        .collect()
                };
                let span_a = push(&sa);
                let span_b = push(&sb);
                let dual_coords = vec![
                    span_a[1] * span_b[2] - span_a[2] * span_b[1],
                    span_a[2] * span_b[0] - span_a[0] * span_b[2],
                    span_a[0] * span_b[1] - span_a[1] * span_b[0],
                ];
                let Ok(dual) = ProjPoint::new(dual_coords) else {
                    continue;
                };
                if candidates
                    .iter()
                    .any(|(d, _, _)| d.proj_distance(&dual) <= tol::SOLUTION_DEDUP)
                {
                    continue;
                }
                candidates.push((dual, span_a, span_b));
            }
        }
    }
    let raw_candidates = candidates.len();
    let mut bitangents: Vec<PlaneBitangent> = Vec::new();
    let mut rejected = 0usize;
    for (dual, span_a, span_b) in candidates {
        match certify_span(curve, &span_a, &span_b) {
            Ok(sc) => {
                let point_at = |t: C64| -> Result<ProjPoint<C64>> {
                    ProjPoint::new((0..3).map(|i| sc.a[i] + t * sc.b[i]).collect())
                };
                let p1 = point_at(sc.t1)?;
                let p2 = point_at(sc.t2)?;
                bitangents.push(PlaneBitangent {
                    dual,
                    contact: [(sc.t1, p1), (sc.t2, p2)],
                    quartic: sc.quartic,
                    square_root: sc.square_root,
                    scale: sc.scale,
                    fit_residual: sc.fit_residual,
                    hyperflex: sc.hyperflex,
                });
            }
            Err(_) => rejected += 1,
        }
    }
    bitangents.sort_by(|x, y| key_cmp(&x.dual.sort_key(), &y.dual.sort_key()));
    Ok(PlaneBitangentReport {
        bitangents,
        raw_candidates,
        rejected,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(x: f64) -> C64 {
        C64::new(x, 0.0)
    }

    /// `x₁²(x₁−x₀)² + x₂·x₀³ + x₃·x₁³`: the line `{x₂ = x₃ = 0}` meets it
    /// in the divisor `2·(1:0:0:0) + 2·(1:1:0:0)`.
    fn doubled_contact_surface() -> QuarticSurface {
        let f = MultiPoly::new(
            4,
            4,
            vec![
                (vec![0, 4, 0, 0], c(1.0)),
                (vec![1, 3, 0, 0], c(-2.0)),
                (vec![2, 2, 0, 0], c(1.0)),
                (vec![3, 0, 1, 0], c(1.0)),
                (vec![0, 3, 0, 1], c(1.0)),
            ],
        )
        .unwrap();
        QuarticSurface::from_poly(f).unwrap()
    }

    fn coordinate_line() -> PlueckerLine {
        let a = ProjPoint::new(vec![c(1.0), c(0.0), c(0.0), c(0.0)]).unwrap();
        let b = ProjPoint::new(vec![c(0.0), c(1.0), c(0.0), c(0.0)]).unwrap();
        PlueckerLine::through(a, b).unwrap()
    }

    #[test]
    fn explicit_double_tangency_certifies() {
        let x = doubled_contact_surface();
        let cert = certify_bitangent(&x, &coordinate_line()).unwrap();
        assert!(!cert.hyperflex);
        assert!(cert.fit_residual < 1e-12, "residual {}", cert.fit_residual);
        assert!((cert.contact[0].0).norm() < 1e-10);
        assert!((cert.contact[1].0 - c(1.0)).norm() < 1e-10);
        let p0 = ProjPoint::new(vec![c(1.0), c(0.0), c(0.0), c(0.0)]).unwrap();
        let p1 = ProjPoint::new(vec![c(1.0), c(1.0), c(0.0), c(0.0)]).unwrap();
        assert!(cert.contact[0].1.proj_distance(&p0) < 1e-10);
        assert!(cert.contact[1].1.proj_distance(&p1) < 1e-10);
        assert!((cert.scale - c(1.0)).norm() < 1e-10);
        assert!(cert.contact_surface_residual < 1e-12);
    }

    #[test]
    fn tangency_system_of_the_fixture_has_rank_two() {
        let x = doubled_contact_surface();
        let cert = certify_bitangent(&x, &coordinate_line()).unwrap();
        let ts = tangent_space_of_s(&x, &cert).unwrap();
        assert_eq!(ts.rank, 2);
        assert_eq!(ts.kernel.len(), 2);
        // The kernel really annihilates the system.
        let rows = tangency_rows(&ts.normal_form);
        for k in &ts.kernel {
            for row in &rows {
                let v: C64 = (0..4).map(|i| row[i] * k[i]).sum();
                assert!(v.norm() < 1e-9, "kernel residual {}", v.norm());
            }
        }
    }

    #[test]
    fn tangency_rank_is_gauge_invariant() {
        let x = doubled_contact_surface();
        let cert = certify_bitangent(&x, &coordinate_line()).unwrap();
        for seed in 0..20u64 {
            let ts = tangent_space_of_s_seeded(&x, &cert, Some(seed)).unwrap();
            assert_eq!(ts.rank, 2, "seed {seed}");
        }
    }

    #[test]
    fn ramification_determinant_factors_at_the_contacts() {
        let x = doubled_contact_surface();
        let cert = certify_bitangent(&x, &coordinate_line()).unwrap();
        let r = ramification_report(&x, &cert, 50).unwrap();
        assert!((r.lambda - c(1.0)).norm() < 1e-10);
        // g(τ) = ∂₂F = x₀³ ↦ 1, h(τ) = ∂₃F = x₁³ ↦ τ³ on the line, so
        // Δ = g(0)h(1) − g(1)h(0) = 1.
        assert!((r.delta - c(1.0)).norm() < 1e-9, "delta {}", r.delta);
        assert!(r.delta_rel > 0.5);
        assert!(r.factor_residual < 1e-12, "factor {}", r.factor_residual);
        assert!(r.det_at(czero()).norm() < 1e-12);
        assert!(r.det_at(r.lambda).norm() < 1e-12);
        assert!(r.det_at(c(0.5)).norm() > 1e-3);
        // |lead · pivot| = |Δ| in the solved chart.
        let lead = r.quadratic.coeff(2);
        assert!(
            ((lead * r.pivot).norm() - r.delta.norm()).abs() < 1e-9,
            "lead {} pivot {}",
            lead,
            r.pivot
        );
        assert!(r.whole_line_measure > 1e-3);
    }

    #[test]
    fn quadruple_contact_is_tagged_hyperflex() {
        let f = MultiPoly::new(
            4,
            4,
            vec![
                (vec![0, 4, 0, 0], c(1.0)),
                (vec![3, 0, 1, 0], c(1.0)),
                (vec![0, 3, 0, 1], c(1.0)),
            ],
        )
        .unwrap();
        let x = QuarticSurface::from_poly(f).unwrap();
        let cert = certify_bitangent(&x, &coordinate_line()).unwrap();
        assert!(cert.hyperflex);
        assert!(cert.contact[0].0.norm() < 1e-6);
        assert!(cert.contact[1].0.norm() < 1e-6);
        let ts = tangent_space_of_s(&x, &cert).unwrap();
        assert_eq!(ts.rank, 2);
    }

    #[test]
    fn singular_contact_drops_the_rank() {
        // Same doubled-contact restriction, but both transverse cubics
        // vanish at the first contact, which is then a singular point of
        // the surface.
        let f = MultiPoly::new(
            4,
            4,
            vec![
                (vec![0, 4, 0, 0], c(1.0)),
                (vec![1, 3, 0, 0], c(-2.0)),
                (vec![2, 2, 0, 0], c(1.0)),
                (vec![2, 1, 1, 0], c(1.0)),
                (vec![0, 3, 0, 1], c(1.0)),
            ],
        )
        .unwrap();
        let x = QuarticSurface::from_poly(f).unwrap();
        let cert = certify_bitangent(&x, &coordinate_line()).unwrap();
        let ts = tangent_space_of_s(&x, &cert).unwrap();
        assert!(ts.rank <= 1, "rank {}", ts.rank);
        assert!(matches!(
            ramification_report(&x, &cert, 10),
            Err(Error::ChartFailure(_))
        ));
    }

    #[test]
    fn a_chord_of_the_surface_fails_certification() {
        let x = QuarticSurface::random(3).unwrap();
        let pts = x.random_points_on_surface(2, 7).unwrap();
        let l = PlueckerLine::through(pts[0].clone(), pts[1].clone()).unwrap();
        match certify_bitangent(&x, &l) {
            Err(Error::CertificationFailed(_)) => {}
            other => panic!("expected certification failure, got {other:?}"),
        }
    }

    #[test]
    fn fiber_over_a_generic_point_has_twelve_lines() {
        let x = QuarticSurface::random(17).unwrap();
        let p = ProjPoint::from_reals(&[0.31, -0.68, 1.0, 0.47]).unwrap();
        let report = bitangents_through_point(&x, &p, 4).unwrap();
        assert!(!report.base_on_surface);
        assert_eq!(report.bitangents.len(), 12, "raw {}", report.raw_candidates);
        for (i, ci) in report.bitangents.iter().enumerate() {
            assert!(ci.fit_residual < 1e-9);
            assert!(ci.contact_surface_residual < 1e-8);
            assert!(ci.line.quadric_residual() < 1e-12);
            assert!(ci.line.contains(&report.base_point, 1e-8));
            for cj in report.bitangents.iter().skip(i + 1) {
                assert!(ci.line.proj_distance(&cj.line) > 1e-4);
            }
        }
    }

    #[test]
    fn fiber_over_a_surface_point_has_six_lines_tangent_there() {
        let x = QuarticSurface::random(17).unwrap();
        let p = x.random_points_on_surface(1, 5).unwrap().remove(0);
        let report = bitangents_through_point(&x, &p, 9).unwrap();
        assert!(report.base_on_surface);
        assert_eq!(report.bitangents.len(), 6, "raw {}", report.raw_candidates);
        for cert in &report.bitangents {
            let touches_base = cert
                .contact
                .iter()
                .any(|(_, q)| q.proj_distance(&report.base_point) < 1e-6);
            assert!(touches_base, "contact away from the base point");
        }
        // The tangent-plane pencil gives the same six lines.
        let pencil = bitangents_tangent_at(&x, &p).unwrap();
        assert_eq!(pencil.len(), 6);
        for cert in &pencil {
            assert!(
                report
                    .bitangents
                    .iter()
                    .any(|c| c.line.proj_distance(&cert.line) < 1e-7),
                "pencil line missing from the fiber"
            );
        }
    }

    #[test]
    fn a_generic_plane_quartic_has_twenty_eight_bitangents() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha20Rng::seed_from_u64(11);
        let mut terms = Vec::new();
        for a in 0..=4u32 {
            for b in 0..=(4 - a) {
                let coeff = C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
                terms.push((vec![a, b, 4 - a - b], coeff));
            }
        }
        let curve = MultiPoly::new(3, 4, terms).unwrap();
        let report = plane_quartic_bitangents(&curve, 2).unwrap();
        assert_eq!(
            report.bitangents.len(),
            28,
            "raw {} rejected {}",
            report.raw_candidates,
            report.rejected
        );
        let scale = curve.coeff_l1();
        for b in &report.bitangents {
            assert!(b.fit_residual < 1e-9);
            assert!(!b.hyperflex);
            for (_, p) in &b.contact {
                assert!(curve.eval(p).norm() < 1e-8 * scale, "contact off the curve");
                let q = p.normalized();
                let d = b.dual.normalized();
                let pairing: C64 = (0..3).map(|i| d.coords()[i] * q.coords()[i]).sum();
                assert!(pairing.norm() < 1e-8, "contact off the line");
            }
        }
        for i in 0..28 {
            for j in (i + 1)..28 {
                assert!(
                    report.bitangents[i]
                        .dual
                        .proj_distance(&report.bitangents[j].dual)
                        > 1e-4
                );
            }
        }
    }

    #[test]
    fn the_fermat_plane_quartic_has_twelve_hyperflex_bitangents() {
        let curve = MultiPoly::new(
            3,
            4,
            vec![
                (vec![4, 0, 0], C64::new(1.0, 0.0)),
                (vec![0, 4, 0], C64::new(1.0, 0.0)),
                (vec![0, 0, 4], C64::new(1.0, 0.0)),
            ],
        )
        .unwrap();
        let report = plane_quartic_bitangents(&curve, 2).unwrap();
        assert_eq!(
            report.bitangents.len(),
            28,
            "raw {} rejected {}",
            report.raw_candidates,
            report.rejected
        );
        let hyperflexes = report.bitangents.iter().filter(|b| b.hyperflex).count();
        assert_eq!(hyperflexes, 12);
        for b in &report.bitangents {
            // Each hyperflex line joins two coordinate directions, so its
            // dual has exactly one vanishing coordinate; the ordinary
            // bitangents have all three bounded away from zero.
            let d = b.dual.normalized();
            let smallest = d
                .coords()
                .iter()
                .map(|c| c.norm())
                .fold(f64::INFINITY, f64::min);
            if b.hyperflex {
                assert!(smallest < 1e-8, "smallest dual coordinate {smallest:.3e}");
                let gap = (b.contact[0].0 - b.contact[1].0).norm();
                let scale = 1.0 + b.contact[0].0.norm() + b.contact[1].0.norm();
                assert!(gap <= tol::CONTACT_MERGE * scale, "contact gap {gap:.3e}");
            } else {
                assert!(smallest > 0.1, "smallest dual coordinate {smallest:.3e}");
            }
        }
    }
}
