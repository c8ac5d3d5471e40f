//! Double points of the Gauss map: pairs of distinct surface points that
//! share a tangent plane, the bitangent lines joining them, numerical
//! continuation along the curve such pairs sweep out on the surface, and
//! the osculation certificate for the ruled family of joining lines.
//!
//! A pair `(p, p′)` with `T_pX = T_{p′}X` is a regular zero of a square
//! polynomial system — surface membership at both points, gradient
//! parallelism, and gauge rows — solved by multi-start Newton and certified
//! independently of the solver.  Certified pairs are stored canonically
//! ordered, so the swap involution acts trivially on the data.  The joining
//! line of a certified pair is a bitangent along which the tangency family
//! ramifies at *every* parameter, which is re-checked through the
//! ramification machinery of [`crate::bitangent`].
//!
//! Continuation along the pair curve uses a fixed-covector level ladder:
//! one gauge plane family serves the whole path, and each accepted step
//! advances the gauge level by an exact, recorded increment.  Reversal
//! ([`retrace`]) replays the same ladder downwards, so it lands on the
//! *same* curve points instead of merely shadowing them.

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;

use crate::bitangent::{certify_bitangent, key_cmp, ramification_report};
use crate::error::{Error, Result};
use crate::geometry::{classify_point, PointClass};
use crate::pluecker::PlueckerLine;
use crate::point::ProjPoint;
use crate::roots::{roots, roots_with_multiplicity};
use crate::scalar::C64;
use crate::surface::QuarticSurface;
use crate::tol;

fn czero() -> C64 {
    C64::new(0.0, 0.0)
}

fn cone() -> C64 {
    C64::new(1.0, 0.0)
}

/// Residuals certifying one pair, all relative.
#[derive(Debug, Clone)]
pub struct PairResiduals {
    /// `|F(p)|` against the coefficient scale of `F`.
    pub on_surface_p: f64,
    /// `|F(p′)|` against the coefficient scale of `F`.
    pub on_surface_p_prime: f64,
    /// `‖∇F(p) ∧ ∇F(p′)‖ / (‖∇F(p)‖·‖∇F(p′)‖)` — the sine of the angle
    /// between the two Gauss images.
    pub gradient_parallelism: f64,
    /// Square-factorization residual of `F` restricted to the joining line.
    pub bitangency: f64,
}

/// A certified pair of distinct surface points with a common tangent plane.
///
/// The two points are stored in a canonical order (lexicographic on the
/// normalized coordinates), so constructing the pair from `(p′, p)` yields
/// the same value as from `(p, p′)`.
#[derive(Debug, Clone)]
pub struct GaussDoublePair {
    /// First point, canonical order.
    pub p: ProjPoint<C64>,
    /// Second point: the unique partner sharing the tangent plane.
    pub p_prime: ProjPoint<C64>,
    /// The joining line `⟨p, p′⟩`.
    pub line: PlueckerLine,
    /// The common Gauss image `[∇F(p)] = [∇F(p′)]`.
    pub dual_point: ProjPoint<C64>,
    /// Certification residuals.
    pub residuals: PairResiduals,
}

/// Why a converged solution of the pair system was not certified.
#[derive(Debug, Clone)]
pub enum RejectionReason {
    /// The two points collide within the merge tolerance: the limit in which
    /// a pair degenerates to a swallowtail point, not a genuine pair.
    SwallowtailSuspect { gap: f64 },
    /// A point missed the surface.
    OffSurface { residual: f64 },
    /// The gradients are not parallel to certification accuracy.
    GaussImageSplit { residual: f64 },
    /// The joining line failed bitangent certification.
    NotBitangent { detail: String },
    /// The line is bitangent, but its contacts are not the two points.
    ContactMismatch { distance: f64 },
    /// The line ramifies only at its contacts, as a generic bitangent does,
    /// instead of along its whole length.
    RamifiedOnlyAtContacts { delta_rel: f64 },
    /// A point classifies as something other than a simple Gauss double
    /// point (parabolic and triple-point cases land here).
    WrongClass { at_partner: bool, class: PointClass },
}

/// A converged but rejected solution, kept for diagnostics.
#[derive(Debug, Clone)]
pub struct RejectedSolution {
    pub p: ProjPoint<C64>,
    pub p_prime: ProjPoint<C64>,
    pub reason: RejectionReason,
}

/// Convergence bookkeeping of one multi-start search.
#[derive(Debug, Clone, Default)]
pub struct SearchStats {
    /// Newton starts attempted.
    pub seeds: usize,
    /// Starts whose iteration converged to a zero of the system.
    pub converged: usize,
    /// Converged solutions discarded as repeats of an earlier solution.
    pub duplicates: usize,
    /// Converged, distinct, certified.
    pub certified: usize,
    /// Converged, distinct, rejected by certification.
    pub rejected: usize,
}

/// Result of [`find_double_pairs`]: certified pairs, tagged rejects, stats.
#[derive(Debug, Clone)]
pub struct DoubleSearchReport {
    /// Certified pairs, canonically ordered and sorted by joining line.
    pub pairs: Vec<GaussDoublePair>,
    /// Distinct converged solutions that failed certification.
    pub rejected: Vec<RejectedSolution>,
    /// Convergence statistics.
    pub stats: SearchStats,
}

/// Why a continuation run stopped before its step budget.
#[derive(Debug, Clone)]
pub enum TraceStop {
    /// All requested steps were accepted.
    Completed,
    /// The corrector kept failing after the halving budget.
    CorrectorStalled { at_step: usize },
    /// A corrected sample failed certification (expected near parabolic
    /// partners and swallowtail limits).
    Certification { at_step: usize, reason: String },
    /// The working charts, pivots, or gauge family degraded; continuing
    /// would need a restart from the last sample.
    ChartDrift { at_step: usize },
}

/// The frozen coordinate frame of one continuation run: charts, pivots, the
/// diagonal gap form, and the gauge covector of the level ladder.  Carried
/// by [`DouPath`] so a reversal can replay the identical plane family.
#[derive(Debug, Clone)]
pub struct TraceFrame {
    pub(crate) chart_p: usize,
    pub(crate) chart_q: usize,
    pub(crate) k: usize,
    pub(crate) i1: usize,
    pub(crate) i2: usize,
    pub(crate) deflation: [C64; 4],
    pub(crate) gauge: [C64; 7],
}

/// An ordered run of certified pairs along one local branch of the curve of
/// Gauss double points.
#[derive(Debug, Clone)]
pub struct DouPath {
    /// Certified samples; the start pair is `samples[0]`.
    pub samples: Vec<GaussDoublePair>,
    /// Accepted gauge-level increment for each move between consecutive
    /// samples (`samples.len() - 1` entries).
    pub step_lengths: Vec<f64>,
    /// Gauge level of each sample, exact ladder bookkeeping.
    pub levels: Vec<C64>,
    /// Total step halvings spent.
    pub halvings: usize,
    /// Why the run ended.
    pub stop: TraceStop,
    /// Coordinate frame for replaying the run.
    pub frame: TraceFrame,
}

/// `‖a ∧ b‖ / (‖a‖·‖b‖)`: the sine of the angle between two lines of C⁴.
fn wedge_deficiency(a: &[C64; 4], b: &[C64; 4]) -> f64 {
    let mut w2 = 0.0f64;
    for i in 0..4 {
        for j in (i + 1)..4 {
            w2 += (a[i] * b[j] - a[j] * b[i]).norm_sqr();
        }
    }
    let na: f64 = a.iter().map(|c| c.norm_sqr()).sum();
    let nb: f64 = b.iter().map(|c| c.norm_sqr()).sum();
    (w2 / (na * nb).max(1e-300)).sqrt()
}

/// A fixed generic plane adjusted to pass through `p` exactly (bilinearly),
/// used as the gauge row when polishing an already-known pair.
fn slice_through(p: &[C64; 4]) -> [C64; 4] {
    let mut a = [
        C64::new(0.61, -0.32),
        C64::new(-0.44, 0.53),
        C64::new(0.27, 0.71),
        C64::new(-0.58, -0.19),
    ];
    let m = argmax_norm(p);
    let along: C64 = (0..4).map(|i| a[i] * p[i]).sum();
    a[m] -= along / p[m];
    a
}

/// Last row of the square system: a fixed slice plane for searching and
/// polishing, or one plane of the continuation level ladder.
enum GaugeRow {
    /// `⟨a, p⟩ = 0`.
    Slice([C64; 4]),
    /// `Σ conj(g_m)·x_m − target = 0` in the seven system unknowns.
    Level { g: [C64; 7], target: C64 },
}

/// The square system cutting out Gauss double pairs in two affine charts.
///
/// Unknowns `x = (p chart coords, p′ chart coords, λ)`; equations
/// `{F(p), F(p′), two wedge components of ∇F(p) ∧ ∇F(p′) at the gradient
/// pivot, ⟨∇F(p), p′⟩, the λ-link ∂_kF(p′) − λ∂_kF(p), gauge row}`.  The
/// wedge rows are divided by a linear gap form that vanishes on the
/// diagonal `p = p′`, which removes the trivial solution family (every
/// surface point paired with itself) and turns it into a repeller.
struct PairSystem<'a> {
    surface: &'a QuarticSurface,
    /// Pivot coordinate of `p`, frozen to `1`.
    chart_p: usize,
    /// Pivot coordinate of `p′`, frozen to `1`.
    chart_q: usize,
    free_p: [usize; 3],
    free_q: [usize; 3],
    /// Gradient pivot: the λ-link coordinate and the wedge anchor.
    k: usize,
    /// Wedge companion coordinates.
    i1: usize,
    i2: usize,
    /// Coefficients of the diagonal gap form `δ(x) = Σ d_m (p′_m − p_m)`.
    deflation: [C64; 4],
    gauge: GaugeRow,
}

fn free_coords(pivot: usize) -> [usize; 3] {
    let mut out = [0usize; 3];
    let mut w = 0;
    for i in 0..4 {
        if i != pivot {
            out[w] = i;
            w += 1;
        }
    }
    out
}

fn argmax_norm(v: &[C64]) -> usize {
    let mut best = 0usize;
    for (i, c) in v.iter().enumerate() {
        if c.norm() > v[best].norm() {
            best = i;
        }
    }
    best
}

impl<'a> PairSystem<'a> {
    /// Build the system around a guess, choosing every chart and pivot from
    /// the guess itself (deterministically).
    fn at(
        surface: &'a QuarticSurface,
        p_guess: &[C64; 4],
        q_guess: &[C64; 4],
        gauge: GaugeRow,
    ) -> Result<Self> {
        let chart_p = argmax_norm(p_guess);
        let chart_q = argmax_norm(q_guess);
        let pp = ProjPoint::new(p_guess.to_vec())?;
        let qq = ProjPoint::new(q_guess.to_vec())?;
        let gp = surface.grad_at(&pp);
        let gq = surface.grad_at(&qq);
        // The λ-link coordinate must carry both gradients; the coordinate
        // closing parallelism through the Euler relation must carry p′.
        let mut k = 0usize;
        for i in 1..4 {
            if gp[i].norm().min(gq[i].norm()) > gp[k].norm().min(gq[k].norm()) {
                k = i;
            }
        }
        let j = if chart_q != k {
            chart_q
        } else {
            let mut second = usize::MAX;
            for i in 0..4 {
                if i != k && (second == usize::MAX || q_guess[i].norm() > q_guess[second].norm()) {
                    second = i;
                }
            }
            second
        };
        let rest: Vec<usize> = (0..4).filter(|i| *i != k && *i != j).collect();
        // Normalize the gap form to be exactly 1 at the guess.
        let mut diff = [czero(); 4];
        let pn = pp.normalized();
        let qn = qq.normalized();
        let mut norm2 = 0.0f64;
        for m in 0..4 {
            diff[m] = qn.coords()[m] - pn.coords()[m];
            norm2 += diff[m].norm_sqr();
        }
        if norm2 < 1e-24 {
            return Err(Error::Degenerate(
                "pair guess collapses onto the diagonal".into(),
            ));
        }
        let deflation = std::array::from_fn(|m| diff[m].conj() / norm2);
        Ok(PairSystem {
            surface,
            chart_p,
            chart_q,
            free_p: free_coords(chart_p),
            free_q: free_coords(chart_q),
            k,
            i1: rest[0],
            i2: rest[1],
            deflation,
            gauge,
        })
    }

    /// Rebuild the system of a recorded continuation frame.
    fn from_frame(surface: &'a QuarticSurface, frame: &TraceFrame, gauge: GaugeRow) -> Self {
        PairSystem {
            surface,
            chart_p: frame.chart_p,
            chart_q: frame.chart_q,
            free_p: free_coords(frame.chart_p),
            free_q: free_coords(frame.chart_q),
            k: frame.k,
            i1: frame.i1,
            i2: frame.i2,
            deflation: frame.deflation,
            gauge,
        }
    }

    /// Chart coordinates of a point pair, plus the multiplier.
    fn pack(&self, p: &[C64; 4], q: &[C64; 4], lambda: C64) -> [C64; 7] {
        let ps = p[self.chart_p];
        let qs = q[self.chart_q];
        let mut x = [czero(); 7];
        for (w, &i) in self.free_p.iter().enumerate() {
            x[w] = p[i] / ps;
        }
        for (w, &i) in self.free_q.iter().enumerate() {
            x[3 + w] = q[i] / qs;
        }
        x[6] = lambda;
        x
    }

    fn embed_p(&self, x: &[C64; 7]) -> [C64; 4] {
        let mut p = [czero(); 4];
        p[self.chart_p] = cone();
        for (w, &i) in self.free_p.iter().enumerate() {
            p[i] = x[w];
        }
        p
    }

    fn embed_q(&self, x: &[C64; 7]) -> [C64; 4] {
        let mut q = [czero(); 4];
        q[self.chart_q] = cone();
        for (w, &i) in self.free_q.iter().enumerate() {
            q[i] = x[3 + w];
        }
        q
    }

    /// Residual vector and Jacobian, evaluated together so the polynomial
    /// work is shared.
    fn residual_jacobian(&self, x: &[C64; 7]) -> (DVector<C64>, DMatrix<C64>) {
        let p = self.embed_p(x);
        let q = self.embed_q(x);
        let lambda = x[6];
        let f = self.surface.f();
        let grad = self.surface.grad();
        let hess = self.surface.hess();
        let fp = f.eval_coords(&p);
        let fq = f.eval_coords(&q);
        let gp: [C64; 4] = std::array::from_fn(|i| grad[i].eval_coords(&p));
        let gq: [C64; 4] = std::array::from_fn(|i| grad[i].eval_coords(&q));
        let mut hp = [[czero(); 4]; 4];
        let mut hq = [[czero(); 4]; 4];
        for i in 0..4 {
            for j in i..4 {
                let vp = hess[i][j].eval_coords(&p);
                let vq = hess[i][j].eval_coords(&q);
                hp[i][j] = vp;
                hp[j][i] = vp;
                hq[i][j] = vq;
                hq[j][i] = vq;
            }
        }
        let d = &self.deflation;
        let mut delta = czero();
        for m in 0..4 {
            delta += d[m] * (q[m] - p[m]);
        }
        // Guarded division: the gap form is ≈ 1 near the guess and stays
        // away from zero at genuine pairs; a vanishing value means the
        // iterate ran into the diagonal pole.
        let delta_safe = if delta.norm() < 1e-12 {
            C64::new(1e-12, 0.0)
        } else {
            delta
        };
        let (k, i1, i2) = (self.k, self.i1, self.i2);
        let w1 = gp[i1] * gq[k] - gp[k] * gq[i1];
        let w2 = gp[i2] * gq[k] - gp[k] * gq[i2];
        let e2 = w1 / delta_safe;
        let e3 = w2 / delta_safe;
        let e4: C64 = (0..4).map(|m| gp[m] * q[m]).sum();
        let e5 = gq[k] - lambda * gp[k];
        let e6 = match &self.gauge {
            GaugeRow::Slice(a) => (0..4).map(|m| a[m] * p[m]).sum::<C64>(),
            GaugeRow::Level { g, target } => {
                (0..7).map(|m| g[m].conj() * x[m]).sum::<C64>() - target
            }
        };
        let r = DVector::from_vec(vec![fp, fq, e2, e3, e4, e5, e6]);

        let mut jac = DMatrix::from_element(7, 7, czero());
        for (w, &c) in self.free_p.iter().enumerate() {
            jac[(0, w)] = gp[c];
            let dw1 = hp[i1][c] * gq[k] - hp[k][c] * gq[i1];
            let dw2 = hp[i2][c] * gq[k] - hp[k][c] * gq[i2];
            jac[(2, w)] = dw1 / delta_safe + e2 * d[c] / delta_safe;
            jac[(3, w)] = dw2 / delta_safe + e3 * d[c] / delta_safe;
            jac[(4, w)] = (0..4).map(|m| hp[c][m] * q[m]).sum::<C64>();
            jac[(5, w)] = -lambda * hp[k][c];
        }
        for (w, &c) in self.free_q.iter().enumerate() {
            let col = 3 + w;
            jac[(1, col)] = gq[c];
            let dw1 = gp[i1] * hq[k][c] - gp[k] * hq[i1][c];
            let dw2 = gp[i2] * hq[k][c] - gp[k] * hq[i2][c];
            jac[(2, col)] = dw1 / delta_safe - e2 * d[c] / delta_safe;
            jac[(3, col)] = dw2 / delta_safe - e3 * d[c] / delta_safe;
            jac[(4, col)] = gp[c];
            jac[(5, col)] = hq[k][c];
        }
        jac[(5, 6)] = -gp[k];
        match &self.gauge {
            GaugeRow::Slice(a) => {
                for (w, &c) in self.free_p.iter().enumerate() {
                    jac[(6, w)] = a[c];
                }
            }
            GaugeRow::Level { g, .. } => {
                for m in 0..7 {
                    jac[(6, m)] = g[m].conj();
                }
            }
        }
        (r, jac)
    }

    /// Norm of the six curve equations alone (no gauge row).
    fn curve_residual(&self, x: &[C64; 7]) -> f64 {
        let (r, _) = self.residual_jacobian(x);
        (0..6).map(|i| r[i].norm_sqr()).sum::<f64>().sqrt()
    }

    /// Newton iteration to a zero of the square system.
    fn newton(&self, x0: [C64; 7], max_iter: usize) -> Option<[C64; 7]> {
        let mut x = x0;
        for _ in 0..max_iter {
            let (r, jac) = self.residual_jacobian(&x);
            if r.iter().any(|c| !c.is_finite()) {
                return None;
            }
            let lu = jac.lu();
            let step = lu.solve(&(-r))?;
            let sn = step.norm();
            let xn = x.iter().map(|c| c.norm()).fold(0.0f64, f64::max);
            if !sn.is_finite() || sn > 1e4 || xn > 1e5 {
                return None;
            }
            for m in 0..7 {
                x[m] += step[m];
            }
            if sn < 1e-13 * (1.0 + xn) {
                return Some(x);
            }
        }
        None
    }

    /// Unit tangent of the solution curve: the kernel direction of the
    /// system without its gauge row, with a canonical complex phase.
    fn tangent(&self, x: &[C64; 7]) -> Option<[C64; 7]> {
        let (_, jac) = self.residual_jacobian(x);
        let open = jac.rows(0, 6).into_owned();
        let normal = open.adjoint() * &open;
        let svd = normal.svd(false, true);
        let vt = svd.v_t?;
        let mut v: [C64; 7] = std::array::from_fn(|c| vt[(6, c)].conj());
        let n2: f64 = v.iter().map(|c| c.norm_sqr()).sum();
        if n2 < 1e-30 {
            return None;
        }
        let sv = &svd.singular_values;
        // A second vanishing singular value means the curve is singular
        // here (node, cusp) and the tangent is not unique.
        if sv[5] < 1e-8 * sv[0].max(1e-300) {
            return None;
        }
        let n = n2.sqrt();
        for c in v.iter_mut() {
            *c /= n;
        }
        let lead = argmax_norm(&v);
        let phase = v[lead] / v[lead].norm();
        for c in v.iter_mut() {
            *c /= phase;
        }
        Some(v)
    }
}

/// Harvest Newton starts: points on the surface from the four roots of `F`
/// along random lines, perturbed, and paired within each line.
fn harvest_starts(
    surface: &QuarticSurface,
    want: usize,
    rng: &mut ChaCha20Rng,
) -> Vec<([C64; 4], [C64; 4])> {
    let mut starts = Vec::with_capacity(want);
    let mut guard = 0usize;
    while starts.len() < want && guard < 80 * want.max(1) {
        guard += 1;
        let a: Vec<C64> = (0..4)
            .map(|_| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        let b: Vec<C64> = (0..4)
            .map(|_| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        let (Ok(pa), Ok(pb)) = (ProjPoint::new(a), ProjPoint::new(b)) else {
            continue;
        };
        let Ok(restriction) = surface.f().restrict_to_line(&pa, &pb) else {
            continue;
        };
        let trimmed = restriction.trim_relative(1e-12);
        if trimmed.degree() != Some(4) {
            continue;
        }
        let Ok(ts) = roots(&trimmed) else { continue };
        let mut pts: Vec<[C64; 4]> = Vec::with_capacity(4);
        for t in ts {
            let coords: Vec<C64> = pa
                .normalized()
                .coords()
                .iter()
                .zip(pb.normalized().coords())
                .map(|(&ca, &cb)| ca + t * cb)
                .collect();
            let Ok(raw) = ProjPoint::new(coords) else {
                continue;
            };
            if let Ok(on) = surface.project_to_surface(&raw, 4) {
                let jiggled: Vec<C64> = on
                    .coords()
                    .iter()
                    .map(|c| c + C64::new(rng.gen_range(-1e-3..1e-3), rng.gen_range(-1e-3..1e-3)))
                    .collect();
                pts.push(std::array::from_fn(|m| jiggled[m]));
            }
        }
        for i in 0..pts.len() {
            for j in (i + 1)..pts.len() {
                if starts.len() < want {
                    starts.push((pts[i], pts[j]));
                }
            }
        }
    }
    starts
}

/// Certify a converged `(p, p′)` as a Gauss double pair, or explain the
/// rejection.  The points are canonically ordered first, so the result is
/// invariant under swapping the arguments.
fn certify_pair(
    surface: &QuarticSurface,
    p_raw: &[C64; 4],
    q_raw: &[C64; 4],
    classify_seed: u64,
) -> std::result::Result<GaussDoublePair, Box<RejectedSolution>> {
    let p = ProjPoint::new(p_raw.to_vec())
        .expect("nonzero chart embedding")
        .normalized();
    let q = ProjPoint::new(q_raw.to_vec())
        .expect("nonzero chart embedding")
        .normalized();
    let (p, q) = if key_cmp(&p.sort_key(), &q.sort_key()) == std::cmp::Ordering::Greater {
        (q, p)
    } else {
        (p, q)
    };
    let reject = |p: &ProjPoint<C64>, q: &ProjPoint<C64>, reason: RejectionReason| {
        Box::new(RejectedSolution {
            p: p.clone(),
            p_prime: q.clone(),
            reason,
        })
    };
    let gap = p.proj_distance(&q);
    if gap <= tol::PROJ_MERGE {
        return Err(reject(&p, &q, RejectionReason::SwallowtailSuspect { gap }));
    }
    let on_p = surface.on_surface_residual(&p);
    let on_q = surface.on_surface_residual(&q);
    if on_p > tol::PAIR_RESIDUAL || on_q > tol::PAIR_RESIDUAL {
        return Err(reject(
            &p,
            &q,
            RejectionReason::OffSurface {
                residual: on_p.max(on_q),
            },
        ));
    }
    let gp = surface.grad_at(&p);
    let gq = surface.grad_at(&q);
    let parallelism = wedge_deficiency(&gp, &gq);
    if parallelism > tol::GAUSS_IMAGE_MATCH {
        return Err(reject(
            &p,
            &q,
            RejectionReason::GaussImageSplit {
                residual: parallelism,
            },
        ));
    }
    let line = match PlueckerLine::through(p.clone(), q.clone()) {
        Ok(l) => l,
        Err(e) => {
            return Err(reject(
                &p,
                &q,
                RejectionReason::NotBitangent {
                    detail: e.to_string(),
                },
            ))
        }
    };
    let cert = match certify_bitangent(surface, &line) {
        Ok(c) => c,
        Err(e) => {
            return Err(reject(
                &p,
                &q,
                RejectionReason::NotBitangent {
                    detail: e.to_string(),
                },
            ))
        }
    };
    let d_direct = cert.contact[0]
        .1
        .proj_distance(&p)
        .max(cert.contact[1].1.proj_distance(&q));
    let d_swapped = cert.contact[0]
        .1
        .proj_distance(&q)
        .max(cert.contact[1].1.proj_distance(&p));
    let contact_distance = d_direct.min(d_swapped);
    if contact_distance > tol::PROJ_MERGE {
        return Err(reject(
            &p,
            &q,
            RejectionReason::ContactMismatch {
                distance: contact_distance,
            },
        ));
    }
    let ram = match ramification_report(surface, &cert, 8) {
        Ok(r) => r,
        Err(e) => {
            return Err(reject(
                &p,
                &q,
                RejectionReason::NotBitangent {
                    detail: e.to_string(),
                },
            ))
        }
    };
    if ram.delta_rel > tol::WHOLE_LINE_DELTA {
        return Err(reject(
            &p,
            &q,
            RejectionReason::RamifiedOnlyAtContacts {
                delta_rel: ram.delta_rel,
            },
        ));
    }
    for (at_partner, pt) in [(false, &p), (true, &q)] {
        let class = match classify_point(surface, pt, classify_seed.wrapping_add(at_partner as u64))
        {
            Ok((c, _)) => c,
            Err(e) => PointClass::Unclassified(e.to_string()),
        };
        if class != PointClass::SimpleGaussDouble {
            return Err(reject(
                &p,
                &q,
                RejectionReason::WrongClass { at_partner, class },
            ));
        }
    }
    let dual_point = ProjPoint::new(gp.to_vec())
        .expect("smooth point has a nonzero gradient")
        .normalized();
    Ok(GaussDoublePair {
        line,
        dual_point,
        residuals: PairResiduals {
            on_surface_p: on_p,
            on_surface_p_prime: on_q,
            gradient_parallelism: parallelism,
            bitangency: cert.fit_residual,
        },
        p,
        p_prime: q,
    })
}

/// Polish a rough point pair (for example the two contacts of a bitangent
/// certificate) onto the pair curve with Newton, then certify it.
pub fn refine_pair(
    surface: &QuarticSurface,
    p_guess: &ProjPoint<C64>,
    q_guess: &ProjPoint<C64>,
) -> Result<GaussDoublePair> {
    let p0: [C64; 4] = std::array::from_fn(|m| p_guess.normalized().coords()[m]);
    let q0: [C64; 4] = std::array::from_fn(|m| q_guess.normalized().coords()[m]);
    let sys = PairSystem::at(surface, &p0, &q0, GaugeRow::Slice(slice_through(&p0)))?;
    let gp = surface.grad_at(p_guess);
    let gq = surface.grad_at(q_guess);
    let lambda0 = if gp[sys.k].norm() > 1e-300 {
        gq[sys.k] / gp[sys.k]
    } else {
        cone()
    };
    let x = sys
        .newton(sys.pack(&p0, &q0, lambda0), 60)
        .ok_or(Error::NoConvergence {
            iterations: 60,
            best_residual: f64::NAN,
        })?;
    let p = sys.embed_p(&x);
    let q = sys.embed_q(&x);
    certify_pair(surface, &p, &q, 0x5eed).map_err(|rej| {
        Error::CertificationFailed(format!("refined pair rejected: {:?}", rej.reason))
    })
}

/// Multi-start search for Gauss double pairs.
///
/// Starts are harvested on the surface along random lines and paired; each
/// start runs Newton on the pair system with a fresh slice plane through
/// its first point.  Converged solutions are de-duplicated by joining line
/// (which also quotients by the swap involution, since certified pairs are
/// canonically ordered) and certified independently.  Returns the certified
/// pairs sorted by line, the tagged rejects, and convergence statistics;
/// zero certified pairs is an error carrying those statistics.
pub fn find_double_pairs(
    surface: &QuarticSurface,
    num_seeds: usize,
    rng_seed: u64,
) -> Result<DoubleSearchReport> {
    let mut rng = ChaCha20Rng::seed_from_u64(rng_seed ^ 0x6a09_e667_f3bc_c908);
    let starts = harvest_starts(surface, num_seeds, &mut rng);
    let mut stats = SearchStats {
        seeds: starts.len(),
        ..SearchStats::default()
    };
    let mut pairs: Vec<GaussDoublePair> = Vec::new();
    let mut rejected: Vec<RejectedSolution> = Vec::new();
    let mut seen_lines: Vec<PlueckerLine> = Vec::new();
    let mut seen_diagonal: Vec<ProjPoint<C64>> = Vec::new();
    for (idx, (p0, q0)) in starts.iter().enumerate() {
        // Slice plane through the first seed point: ⟨a, p₀⟩ = 0 exactly.
        let mut a: [C64; 4] =
            std::array::from_fn(|_| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
        let m = argmax_norm(p0);
        let along: C64 = (0..4).map(|i| a[i] * p0[i]).sum();
        a[m] -= along / p0[m];
        let Ok(sys) = PairSystem::at(surface, p0, q0, GaugeRow::Slice(a)) else {
            continue;
        };
        let gp = surface.grad_at(&ProjPoint::new(p0.to_vec()).expect("seed"));
        let gq = surface.grad_at(&ProjPoint::new(q0.to_vec()).expect("seed"));
        let lambda0 = if gp[sys.k].norm() > 1e-300 {
            gq[sys.k] / gp[sys.k]
        } else {
            cone()
        };
        let x0 = sys.pack(p0, q0, lambda0);
        let Some(x) = sys.newton(x0, 60) else {
            continue;
        };
        stats.converged += 1;
        let p = sys.embed_p(&x);
        let q = sys.embed_q(&x);
        let pp = ProjPoint::new(p.to_vec()).expect("chart embedding");
        let qq = ProjPoint::new(q.to_vec()).expect("chart embedding");
        if pp.proj_distance(&qq) <= tol::PROJ_MERGE {
            // Collapsed onto the diagonal: dedupe these by location to keep
            // the reject list readable.
            if seen_diagonal
                .iter()
                .all(|s| s.proj_distance(&pp) > tol::PROJ_MERGE)
            {
                seen_diagonal.push(pp.normalized());
                rejected.push(RejectedSolution {
                    reason: RejectionReason::SwallowtailSuspect {
                        gap: pp.proj_distance(&qq),
                    },
                    p: pp.normalized(),
                    p_prime: qq.normalized(),
                });
                stats.rejected += 1;
            } else {
                stats.duplicates += 1;
            }
            continue;
        }
        let Ok(line) = PlueckerLine::through(pp.clone(), qq.clone()) else {
            continue;
        };
        if seen_lines
            .iter()
            .any(|l| l.proj_distance(&line) <= tol::PROJ_MERGE)
        {
            stats.duplicates += 1;
            continue;
        }
        seen_lines.push(line);
        match certify_pair(surface, &p, &q, rng_seed.wrapping_add(2 * idx as u64)) {
            Ok(pair) => {
                stats.certified += 1;
                pairs.push(pair);
            }
            Err(rej) => {
                stats.rejected += 1;
                rejected.push(*rej);
            }
        }
    }
    // A partner is unique, so distinct certified pairs may not share a
    // point; keep the first of any colliding group (deterministic order).
    pairs.sort_by(|x, y| key_cmp(&x.line.sort_key(), &y.line.sort_key()));
    let mut filtered: Vec<GaussDoublePair> = Vec::with_capacity(pairs.len());
    for pair in pairs {
        let collides = filtered.iter().any(|kept| {
            kept.p.proj_distance(&pair.p) <= tol::PROJ_MERGE
                || kept.p.proj_distance(&pair.p_prime) <= tol::PROJ_MERGE
                || kept.p_prime.proj_distance(&pair.p) <= tol::PROJ_MERGE
                || kept.p_prime.proj_distance(&pair.p_prime) <= tol::PROJ_MERGE
        });
        if !collides {
            filtered.push(pair);
        }
    }
    stats.certified = filtered.len();
    if filtered.is_empty() {
        return Err(Error::CertificationFailed(format!(
            "no Gauss double pair certified from {} seeds ({} converged, {} duplicates, {} rejected)",
            stats.seeds, stats.converged, stats.duplicates, stats.rejected
        )));
    }
    Ok(DoubleSearchReport {
        pairs: filtered,
        rejected,
        stats,
    })
}

/// The joining line `⟨p, p′⟩` of a certified pair, rebuilt from the points.
pub fn dou_line(pair: &GaussDoublePair) -> Result<PlueckerLine> {
    PlueckerLine::through(pair.p.clone(), pair.p_prime.clone())
}

/// Osculation data for a certified pair: the contact multiset of the
/// joining line and the finite-difference tangency of the ruled family.
#[derive(Debug, Clone)]
pub struct OsculationReport {
    /// Clustered roots of `F` on the joining line with multiplicities;
    /// `{2, 2}` for a certified pair.
    pub contact_roots: Vec<(C64, usize)>,
    /// Square-factorization residual of the restriction (the `2p + 2p′`
    /// divisor certificate).
    pub multiset_residual: f64,
    /// Angle between the ruled family's tangent plane at `p` and the
    /// surface tangent plane there.
    pub tangency_angle_p: f64,
    /// Same at the partner point.
    pub tangency_angle_p_prime: f64,
    /// Continuation step used for the finite difference.
    pub continuation_step: f64,
}

/// One predictor-corrector move along the pair curve: advance the gauge
/// level of `dir`'s own plane family by `h` from `x`.
fn continue_once(sys: &mut PairSystem, x: &[C64; 7], dir: &[C64; 7], h: f64) -> Option<[C64; 7]> {
    let level: C64 = (0..7).map(|m| dir[m].conj() * x[m]).sum();
    sys.gauge = GaugeRow::Level {
        g: *dir,
        target: level + C64::new(h, 0.0),
    };
    let pred: [C64; 7] = std::array::from_fn(|m| x[m] + dir[m] * h);
    sys.newton(pred, 14)
}

/// Polish a certified pair under the pair system and return the system and
/// the packed solution.
fn polish_pair<'a>(
    surface: &'a QuarticSurface,
    pair: &GaussDoublePair,
) -> Result<(PairSystem<'a>, [C64; 7])> {
    let p0: [C64; 4] = std::array::from_fn(|m| pair.p.coords()[m]);
    let q0: [C64; 4] = std::array::from_fn(|m| pair.p_prime.coords()[m]);
    let sys = PairSystem::at(surface, &p0, &q0, GaugeRow::Slice(slice_through(&p0)))?;
    let gp = surface.grad_at(&pair.p);
    let gq = surface.grad_at(&pair.p_prime);
    let lambda0 = if gp[sys.k].norm() > 1e-300 {
        gq[sys.k] / gp[sys.k]
    } else {
        cone()
    };
    let x = sys.newton(sys.pack(&p0, &q0, lambda0), 20).ok_or_else(|| {
        Error::Degenerate("certified pair does not polish under the pair system".into())
    })?;
    Ok((sys, x))
}

/// Certify the osculation of the ruled family along the pair curve.
///
/// Part one re-derives the divisor `X|_l = 2p + 2p′` by clustering the
/// roots of the restriction.  Part two takes one corrected continuation
/// step to each side, finite-differences the moving-pair parameterization,
/// and compares the resulting tangent plane of the ruled family with the
/// surface tangent plane at both contact points.
pub fn osculation_certificate(
    surface: &QuarticSurface,
    pair: &GaussDoublePair,
) -> Result<OsculationReport> {
    let line = dou_line(pair)?;
    let cert = certify_bitangent(surface, &line)?;
    let contact_roots = roots_with_multiplicity(&cert.quartic, tol::CONTACT_MERGE)?;
    let mults: Vec<usize> = contact_roots.iter().map(|(_, m)| *m).collect();
    if mults != vec![2, 2] {
        return Err(Error::CertificationFailed(format!(
            "restriction divisor is not 2p + 2p′ (multiplicities {mults:?})"
        )));
    }
    let (mut sys, x) = polish_pair(surface, pair)?;
    let dir = sys
        .tangent(&x)
        .ok_or_else(|| Error::Degenerate("pair curve tangent is not unique here".into()))?;
    let mut h = 1e-4f64;
    let mut sides: Option<([C64; 7], [C64; 7])> = None;
    for _ in 0..=10 {
        let minus_dir: [C64; 7] = std::array::from_fn(|m| -dir[m]);
        let plus = continue_once(&mut sys, &x, &dir, h);
        let minus = continue_once(&mut sys, &x, &minus_dir, h);
        if let (Some(a), Some(b)) = (plus, minus) {
            sides = Some((a, b));
            break;
        }
        h *= 0.5;
    }
    let (xp, xm) = sides.ok_or(Error::NoConvergence {
        iterations: 14,
        best_residual: f64::NAN,
    })?;
    let p_plus = sys.embed_p(&xp);
    let p_minus = sys.embed_p(&xm);
    let q_plus = sys.embed_q(&xp);
    let q_minus = sys.embed_q(&xm);
    let p_emb = sys.embed_p(&x);
    let q_emb = sys.embed_q(&x);
    let gp = surface.grad_at(&pair.p);
    let gq = surface.grad_at(&pair.p_prime);
    let two_h = C64::new(2.0 * h, 0.0);
    let vp: [C64; 4] = std::array::from_fn(|m| (p_plus[m] - p_minus[m]) / two_h);
    let vq: [C64; 4] = std::array::from_fn(|m| (q_plus[m] - q_minus[m]) / two_h);
    let angle_p = ruled_plane_angle(&p_emb, &q_emb, &vp, &gp)?;
    let angle_q = ruled_plane_angle(&q_emb, &p_emb, &vq, &gq)?;
    Ok(OsculationReport {
        contact_roots,
        multiset_residual: cert.fit_residual,
        tangency_angle_p: angle_p,
        tangency_angle_p_prime: angle_q,
        continuation_step: h,
    })
}

/// Angle between the plane spanned by `{at, other, velocity}` and the
/// surface tangent plane with normal `grad`, as projective dual points.
fn ruled_plane_angle(
    at: &[C64; 4],
    other: &[C64; 4],
    velocity: &[C64; 4],
    grad: &[C64; 4],
) -> Result<f64> {
    let m = DMatrix::from_fn(3, 4, |r, c| match r {
        0 => at[c],
        1 => other[c],
        _ => velocity[c],
    });
    let normal = m.adjoint() * &m;
    let svd = normal.svd(false, true);
    let sv = &svd.singular_values;
    if sv[2] < 1e-16 * sv[0].max(1e-300) {
        return Err(Error::Degenerate(
            "ruled family degenerates to a plane pencil here".into(),
        ));
    }
    let vt = svd
        .v_t
        .ok_or_else(|| Error::Degenerate("singular decomposition returned no basis".into()))?;
    let plane: [C64; 4] = std::array::from_fn(|c| vt[(3, c)].conj());
    Ok(wedge_deficiency(&plane, grad))
}

/// Pseudo-arclength continuation of the pair system from a certified pair.
///
/// The run fixes one gauge covector (the start tangent) and advances its
/// level by `step_size` each step, halving on corrector failure; every
/// accepted sample is independently re-certified.  Early stops carry the
/// reason — certification failures are expected near parabolic partners
/// and swallowtail limits.
pub fn trace_c_dou(
    surface: &QuarticSurface,
    start: &GaussDoublePair,
    steps: usize,
    step_size: f64,
) -> Result<DouPath> {
    if !(step_size.is_finite() && step_size > 0.0) {
        return Err(Error::Degenerate("step size must be positive".into()));
    }
    let (sys, x) = polish_pair(surface, start)?;
    let gauge = sys
        .tangent(&x)
        .ok_or_else(|| Error::Degenerate("pair curve tangent is not unique here".into()))?;
    let frame = TraceFrame {
        chart_p: sys.chart_p,
        chart_q: sys.chart_q,
        k: sys.k,
        i1: sys.i1,
        i2: sys.i2,
        deflation: sys.deflation,
        gauge,
    };
    run_ladder(
        surface,
        frame,
        start.clone(),
        x,
        steps,
        step_size,
        1.0,
        None,
    )
}

/// Replay a traced path backwards through the identical gauge-plane ladder.
///
/// Because every forward sample is the intersection of the pair curve with
/// one recorded level plane, the reversed run solves for the *same* points;
/// the samples come back in reverse order up to corrector tolerance rather
/// than merely nearby.
pub fn retrace(surface: &QuarticSurface, path: &DouPath) -> Result<DouPath> {
    if path.samples.len() < 2 {
        return Err(Error::Degenerate("path has no steps to reverse".into()));
    }
    let start = path.samples.last().expect("nonempty").clone();
    let sys = PairSystem::from_frame(
        surface,
        &path.frame,
        GaugeRow::Level {
            g: path.frame.gauge,
            target: *path.levels.last().expect("nonempty"),
        },
    );
    // The stored pair is canonically ordered, which may swap the roles its
    // coordinates play in the recorded frame; pick the packing that lies on
    // the curve.
    let pc: [C64; 4] = std::array::from_fn(|m| start.p.coords()[m]);
    let qc: [C64; 4] = std::array::from_fn(|m| start.p_prime.coords()[m]);
    let gp = surface.grad_at(&start.p);
    let gq = surface.grad_at(&start.p_prime);
    let (x, _) = [
        sys.pack(&pc, &qc, safe_ratio(gq[sys.k], gp[sys.k])),
        sys.pack(&qc, &pc, safe_ratio(gp[sys.k], gq[sys.k])),
    ]
    .into_iter()
    .map(|cand| {
        let r = sys.curve_residual(&cand);
        (cand, r)
    })
    .min_by(|a, b| a.1.total_cmp(&b.1))
    .expect("two candidates");
    let ladder: Vec<(f64, C64)> = path
        .step_lengths
        .iter()
        .zip(path.levels.iter())
        .rev()
        .map(|(h, level)| (*h, *level))
        .collect();
    run_ladder(
        surface,
        path.frame.clone(),
        start,
        x,
        ladder.len(),
        f64::NAN,
        -1.0,
        Some(&ladder),
    )
}

fn safe_ratio(num: C64, den: C64) -> C64 {
    if den.norm() > 1e-300 {
        num / den
    } else {
        cone()
    }
}

/// Shared ladder walker for [`trace_c_dou`] and [`retrace`].
///
/// `sign` +1 climbs the gauge level, −1 descends; `replay`, when given,
/// pins each step to a recorded `(increment, target level)` pair instead of
/// advancing by `step_size`.
#[allow(clippy::too_many_arguments)]
fn run_ladder(
    surface: &QuarticSurface,
    frame: TraceFrame,
    start: GaussDoublePair,
    x0: [C64; 7],
    steps: usize,
    step_size: f64,
    sign: f64,
    replay: Option<&[(f64, C64)]>,
) -> Result<DouPath> {
    let g = frame.gauge;
    let mut sys = PairSystem::from_frame(surface, &frame, GaugeRow::Slice([czero(); 4]));
    let mut x = x0;
    let mut level: C64 = (0..7).map(|m| g[m].conj() * x[m]).sum();
    let mut samples = vec![start];
    let mut levels = vec![level];
    let mut step_lengths = Vec::new();
    let mut halvings = 0usize;
    let mut stop = TraceStop::Completed;
    'outer: for step_idx in 0..steps {
        let Some(v) = sys.tangent(&x) else {
            stop = TraceStop::ChartDrift { at_step: step_idx };
            break 'outer;
        };
        // Align the predictor with the gauge direction of travel.
        let inner: C64 = (0..7).map(|m| g[m].conj() * v[m]).sum();
        let rate = inner.norm();
        if rate < 0.2 {
            // The curve is turning across the gauge family; a fresh trace
            // from the last sample is needed.
            stop = TraceStop::ChartDrift { at_step: step_idx };
            break 'outer;
        }
        let mu = inner.conj() / rate * sign;
        let va: [C64; 7] = std::array::from_fn(|m| v[m] * mu);
        let mut accepted: Option<([C64; 7], f64, C64)> = None;
        if let Some(ladder) = replay {
            // Descend to the recorded rung exactly.
            let (h, target) = ladder[step_idx];
            sys.gauge = GaugeRow::Level { g, target };
            let pred: [C64; 7] = std::array::from_fn(|m| x[m] + va[m] * (h / rate));
            if let Some(nx) = sys.newton(pred, 14) {
                accepted = Some((nx, h, target));
            }
        } else {
            let mut h = step_size;
            for _ in 0..=10 {
                let target = level + C64::new(sign * h, 0.0);
                sys.gauge = GaugeRow::Level { g, target };
                let pred: [C64; 7] = std::array::from_fn(|m| x[m] + va[m] * (h / rate));
                if let Some(nx) = sys.newton(pred, 14) {
                    accepted = Some((nx, h, target));
                    break;
                }
                halvings += 1;
                h *= 0.5;
            }
        }
        let Some((nx, h, new_level)) = accepted else {
            stop = TraceStop::CorrectorStalled { at_step: step_idx };
            break 'outer;
        };
        let p = sys.embed_p(&nx);
        let q = sys.embed_q(&nx);
        // Chart health: the frozen pivot coordinates must stay pivotal.
        let p_max = p.iter().map(|c| c.norm()).fold(0.0f64, f64::max);
        let q_max = q.iter().map(|c| c.norm()).fold(0.0f64, f64::max);
        if p_max > 8.0 || q_max > 8.0 {
            stop = TraceStop::ChartDrift { at_step: step_idx };
            break 'outer;
        }
        match certify_pair(surface, &p, &q, 0x7ace ^ step_idx as u64) {
            Ok(pair) => {
                samples.push(pair);
                step_lengths.push(h);
                levels.push(new_level);
            }
            Err(rej) => {
                stop = TraceStop::Certification {
                    at_step: step_idx,
                    reason: format!("{:?}", rej.reason),
                };
                break 'outer;
            }
        }
        x = nx;
        level = new_level;
    }
    Ok(DouPath {
        samples,
        step_lengths,
        levels,
        halvings,
        stop,
        frame,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bitangent::bitangents_through_point;

    #[test]
    fn found_pairs_certify_and_swap_cleanly() {
        let x = QuarticSurface::random(17).unwrap();
        let report = find_double_pairs(&x, 120, 7).unwrap();
        assert!(
            report.pairs.len() >= 2,
            "certified {} of {} converged",
            report.pairs.len(),
            report.stats.converged
        );
        for pair in &report.pairs {
            let r = &pair.residuals;
            assert!(r.on_surface_p < tol::PAIR_RESIDUAL);
            assert!(r.on_surface_p_prime < tol::PAIR_RESIDUAL);
            assert!(r.gradient_parallelism < tol::GAUSS_IMAGE_MATCH);
            assert!(r.bitangency < tol::PAIR_RESIDUAL);
            assert!(pair.p.proj_distance(&pair.p_prime) > tol::PROJ_MERGE);
            // Swapping the construction order changes nothing.
            let pc: [C64; 4] = std::array::from_fn(|m| pair.p.coords()[m]);
            let qc: [C64; 4] = std::array::from_fn(|m| pair.p_prime.coords()[m]);
            let swapped = certify_pair(&x, &qc, &pc, 5).unwrap();
            assert!(swapped.p.proj_distance(&pair.p) < 1e-9);
            assert!(swapped.line.proj_distance(&pair.line) < 1e-9);
            assert!(swapped.dual_point.proj_distance(&pair.dual_point) < 1e-9);
        }
        // The partner of a point is unique, so no two pairs share a point.
        for (i, a) in report.pairs.iter().enumerate() {
            for b in report.pairs.iter().skip(i + 1) {
                assert!(a.p.proj_distance(&b.p) > tol::PROJ_MERGE);
                assert!(a.p_prime.proj_distance(&b.p_prime) > tol::PROJ_MERGE);
                assert!(a.p.proj_distance(&b.p_prime) > tol::PROJ_MERGE);
            }
        }
    }

    #[test]
    fn double_lines_ramify_along_their_whole_length() {
        let x = QuarticSurface::random(17).unwrap();
        let report = find_double_pairs(&x, 120, 7).unwrap();
        let pair = &report.pairs[0];
        let cert = certify_bitangent(&x, &pair.line).unwrap();
        let ram = ramification_report(&x, &cert, 10).unwrap();
        assert!(
            ram.delta_rel < tol::WHOLE_LINE_DELTA,
            "delta_rel {}",
            ram.delta_rel
        );
        // Contrast: on a generic fiber bitangent the determinant genuinely
        // moves, vanishing only at the two contacts.
        let base = ProjPoint::from_reals(&[0.31, -0.68, 1.0, 0.47]).unwrap();
        let fiber = bitangents_through_point(&x, &base, 4).unwrap();
        let generic = ramification_report(&x, &fiber.bitangents[0], 10).unwrap();
        assert!(generic.delta_rel > 1e-3, "generic {}", generic.delta_rel);
    }

    #[test]
    fn a_fiber_through_a_double_line_recovers_it() {
        let x = QuarticSurface::random(17).unwrap();
        let report = find_double_pairs(&x, 120, 7).unwrap();
        let pair = &report.pairs[0];
        // A base point on the line but far from both contacts.
        let base = pair.line.point_at(C64::new(0.37, 0.21));
        let fiber = bitangents_through_point(&x, &base, 11).unwrap();
        let found = fiber
            .bitangents
            .iter()
            .find(|c| c.line.proj_distance(&pair.line) < 1e-6)
            .expect("the double line passes through the base point");
        let ram = ramification_report(&x, found, 8).unwrap();
        assert!(ram.delta_rel < tol::WHOLE_LINE_DELTA);
        // And the fiber line's raw contacts polish back to the same pair.
        let rebuilt = refine_pair(&x, &found.contact[0].1, &found.contact[1].1).unwrap();
        assert!(rebuilt.p.proj_distance(&pair.p) < 1e-6);
        assert!(rebuilt.p_prime.proj_distance(&pair.p_prime) < 1e-6);
    }

    #[test]
    fn osculation_holds_on_certified_pairs() {
        let x = QuarticSurface::random(17).unwrap();
        let report = find_double_pairs(&x, 120, 7).unwrap();
        for pair in report.pairs.iter().take(3) {
            let osc = osculation_certificate(&x, pair).unwrap();
            assert!(osc.multiset_residual < tol::PAIR_RESIDUAL);
            let mults: Vec<usize> = osc.contact_roots.iter().map(|(_, m)| *m).collect();
            assert_eq!(mults, vec![2, 2]);
            assert!(
                osc.tangency_angle_p < tol::OSCULATION_ANGULAR,
                "angle at p {}",
                osc.tangency_angle_p
            );
            assert!(
                osc.tangency_angle_p_prime < tol::OSCULATION_ANGULAR,
                "angle at p′ {}",
                osc.tangency_angle_p_prime
            );
        }
    }

    #[test]
    fn near_coincident_points_are_tagged_swallowtail_suspect() {
        let x = QuarticSurface::random(17).unwrap();
        let p = x.random_points_on_surface(1, 5).unwrap().remove(0);
        let pc: [C64; 4] = std::array::from_fn(|m| p.coords()[m]);
        let qc: [C64; 4] = std::array::from_fn(|m| pc[m] + C64::new(1e-9, -2e-9));
        match certify_pair(&x, &pc, &qc, 1) {
            Err(rej) => assert!(matches!(
                rej.reason,
                RejectionReason::SwallowtailSuspect { .. }
            )),
            Ok(_) => panic!("coincident points must not certify"),
        }
    }

    #[test]
    fn a_chord_does_not_certify_as_a_pair() {
        let x = QuarticSurface::random(17).unwrap();
        let pts = x.random_points_on_surface(2, 9).unwrap();
        let pc: [C64; 4] = std::array::from_fn(|m| pts[0].coords()[m]);
        let qc: [C64; 4] = std::array::from_fn(|m| pts[1].coords()[m]);
        match certify_pair(&x, &pc, &qc, 1) {
            Err(rej) => assert!(matches!(
                rej.reason,
                RejectionReason::GaussImageSplit { .. }
            )),
            Ok(_) => panic!("a random chord must not certify"),
        }
    }

    #[test]
    fn tracing_follows_the_curve_and_retraces_backwards() {
        let x = QuarticSurface::random(17).unwrap();
        let report = find_double_pairs(&x, 120, 7).unwrap();
        let start = &report.pairs[0];
        let forward = trace_c_dou(&x, start, 12, 5e-3).unwrap();
        assert!(
            forward.samples.len() >= 10,
            "only {} samples ({:?})",
            forward.samples.len(),
            forward.stop
        );
        for pair in &forward.samples {
            assert!(pair.residuals.gradient_parallelism < tol::GAUSS_IMAGE_MATCH);
            assert!(
                pair.dual_point
                    .proj_distance(&gauss_image_of(&x, &pair.p_prime))
                    < 1e-7
            );
        }
        // Consecutive samples move, and stay distinct.
        for w in forward.samples.windows(2) {
            let d = w[0].p.proj_distance(&w[1].p);
            assert!(d > 1e-5, "stalled at {d}");
        }
        let back = retrace(&x, &forward).unwrap();
        assert_eq!(back.samples.len(), forward.samples.len(), "{:?}", back.stop);
        // The reversed run lands on the same curve points, in reverse.
        let n = forward.samples.len();
        for (i, sample) in back.samples.iter().enumerate() {
            let twin = &forward.samples[n - 1 - i];
            assert!(
                sample.p.proj_distance(&twin.p) < tol::TRACE_REVERSAL,
                "step {} gap {}",
                i,
                sample.p.proj_distance(&twin.p)
            );
        }
        let home = back.samples.last().unwrap();
        assert!(home.p.proj_distance(&start.p) < tol::TRACE_REVERSAL);
        assert!(home.p_prime.proj_distance(&start.p_prime) < tol::TRACE_REVERSAL);
    }

    fn gauss_image_of(x: &QuarticSurface, p: &ProjPoint<C64>) -> ProjPoint<C64> {
        ProjPoint::new(x.grad_at(p).to_vec()).unwrap().normalized()
    }
}
