//! Univariate complex root finding.
//!
//! The workhorse is the Aberth–Ehrlich simultaneous iteration: all roots are
//! updated together, with a pairwise repulsion term that prevents two
//! approximations from collapsing onto the same simple root.  Initial guesses
//! are placed on the annuli suggested by the Newton polygon of the
//! coefficient moduli, which keeps the iteration fast even when root
//! magnitudes span many orders.  Converged roots are polished with a few
//! plain Newton steps.
//!
//! Multiple roots never converge to full precision individually (a root of
//! multiplicity `m` is found to roughly `eps^(1/m)`), so [`roots_with_multiplicity`]
//! clusters the raw output and then refines each cluster centre against the
//! `(m-1)`-th derivative, where the multiple root reappears as a simple one.

use crate::error::{Error, Result};
use crate::poly::UniPoly;
use crate::scalar::C64;

/// Hard cap on Aberth sweeps; generic inputs converge in well under 50.
const MAX_SWEEPS: usize = 400;

/// A root is accepted when `|p(z)|` drops below this multiple of the
/// evaluation scale `sum |a_k| |z|^k` (a backward-stability criterion).
const RESIDUAL_FACTOR: f64 = 8.0 * f64::EPSILON;

/// All complex roots of `p`, with multiplicity (a triple root appears three
/// times, as three nearby approximations).
///
/// The leading coefficient must be exactly nonzero; callers holding
/// interpolated data with roundoff dust in the top coefficients should call
/// [`UniPoly::trim_relative`] first and decide the cutoff themselves.
pub fn roots(p: &UniPoly<C64>) -> Result<Vec<C64>> {
    let Some(degree) = p.degree() else {
        return Err(Error::InvalidPolynomial(
            "cannot extract roots of the zero polynomial".into(),
        ));
    };
    if degree == 0 {
        return Ok(Vec::new());
    }
    if p.coeffs().iter().any(|c| !c.is_finite()) {
        return Err(Error::InvalidPolynomial(
            "cannot extract roots with non-finite coefficients".into(),
        ));
    }

    // Exact zero constant terms are roots at the origin; strip them first so
    // the Newton-polygon initialisation never sees log(0).
    let mut coeffs = p.coeffs().to_vec();
    let mut zeros_at_origin = 0usize;
    while coeffs.len() > 1 && coeffs[0] == C64::new(0.0, 0.0) {
        coeffs.remove(0);
        zeros_at_origin += 1;
    }

    let mut found = vec![C64::new(0.0, 0.0); zeros_at_origin];
    let n = coeffs.len() - 1;
    if n == 0 {
        return Ok(found);
    }
    if n == 1 {
        found.push(-coeffs[0] / coeffs[1]);
        return Ok(found);
    }
    if n == 2 {
        found.extend(quadratic_roots(coeffs[0], coeffs[1], coeffs[2]));
        return Ok(found);
    }

    let mut z = initial_guesses(&coeffs);
    let mut converged = vec![false; n];

    for _ in 0..MAX_SWEEPS {
        let mut all_done = true;
        for i in 0..n {
            if converged[i] {
                continue;
            }
            let (val, der) = eval_with_derivative(&coeffs, z[i]);
            if val.norm() <= RESIDUAL_FACTOR * eval_scale(&coeffs, z[i]) {
                converged[i] = true;
                continue;
            }
            all_done = false;

            let w = if der.norm() == 0.0 {
                // At a critical point the Newton direction is undefined;
                // nudge off it and let the next sweep recover.
                C64::new(1e-8, 1e-8) * (1.0 + z[i].norm())
            } else {
                val / der
            };
            let mut repulsion = C64::new(0.0, 0.0);
            for j in 0..n {
                if j != i {
                    let diff = z[i] - z[j];
                    if diff.norm() > 0.0 {
                        repulsion += C64::new(1.0, 0.0) / diff;
                    }
                }
            }
            let denom = C64::new(1.0, 0.0) - w * repulsion;
            let step = if denom.norm() < 1e-14 { w } else { w / denom };
            z[i] -= step;
        }
        if all_done {
            break;
        }
    }

    for zi in z.iter_mut() {
        *zi = newton_polish(&coeffs, *zi, 4);
    }
    found.extend(z);
    Ok(found)
}

/// Roots of `p` grouped into clusters of pairwise relative distance at most
/// `cluster_rel`, each reported once with its multiplicity.
///
/// Cluster centres of size `m > 1` are re-polished against the `(m-1)`-th
/// derivative, which restores full accuracy for genuine multiple roots.
pub fn roots_with_multiplicity(p: &UniPoly<C64>, cluster_rel: f64) -> Result<Vec<(C64, usize)>> {
    let raw = roots(p)?;
    let n = raw.len();
    let mut parent: Vec<usize> = (0..n).collect();

    fn find(parent: &mut Vec<usize>, i: usize) -> usize {
        if parent[i] != i {
            let root = find(parent, parent[i]);
            parent[i] = root;
        }
        parent[i]
    }

    for i in 0..n {
        for j in (i + 1)..n {
            let scale = f64::max(1.0, f64::max(raw[i].norm(), raw[j].norm()));
            if (raw[i] - raw[j]).norm() <= cluster_rel * scale {
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                if ri != rj {
                    parent[ri] = rj;
                }
            }
        }
    }

    let mut clusters: std::collections::BTreeMap<usize, Vec<C64>> = Default::default();
    for i in 0..n {
        let root = find(&mut parent, i);
        clusters.entry(root).or_default().push(raw[i]);
    }

    let mut out = Vec::new();
    for members in clusters.values() {
        let m = members.len();
        let mut centre = members.iter().sum::<C64>() / m as f64;
        if m > 1 {
            let mut q = p.clone();
            for _ in 0..(m - 1) {
                q = q.derivative();
            }
            let refined = newton_polish(q.coeffs(), centre, 30);
            let before = q.eval(&centre).norm();
            let after = q.eval(&refined).norm();
            if after <= before {
                centre = refined;
            }
        }
        out.push((centre, m));
    }
    out.sort_by(|a, b| {
        (a.0.re, a.0.im)
            .partial_cmp(&(b.0.re, b.0.im))
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    Ok(out)
}

/// Monic polynomial with the given roots; the standard way tests build
/// inputs whose answers are known in advance.
pub fn expand_monic(roots: &[C64]) -> UniPoly<C64> {
    let mut coeffs = vec![C64::new(1.0, 0.0)];
    for &r in roots {
        let mut next = vec![C64::new(0.0, 0.0); coeffs.len() + 1];
        for (k, &c) in coeffs.iter().enumerate() {
            next[k + 1] += c;
            next[k] -= c * r;
        }
        coeffs = next;
    }
    UniPoly::new(coeffs)
}

/// Numerically stable quadratic formula: the larger root is computed by the
/// direct formula, the smaller from the product, avoiding cancellation.
fn quadratic_roots(c0: C64, c1: C64, c2: C64) -> [C64; 2] {
    let disc = (c1 * c1 - 4.0 * c2 * c0).sqrt();
    // Pick the sign that enlarges |c1 + sign * disc|.
    let q = if (c1 + disc).norm() >= (c1 - disc).norm() {
        -(c1 + disc) / 2.0
    } else {
        -(c1 - disc) / 2.0
    };
    if q.norm() == 0.0 {
        return [C64::new(0.0, 0.0), -c1 / c2];
    }
    [q / c2, c0 / q]
}

/// `p(z)` and `p'(z)` in one Horner pass.
fn eval_with_derivative(coeffs: &[C64], z: C64) -> (C64, C64) {
    let mut val = C64::new(0.0, 0.0);
    let mut der = C64::new(0.0, 0.0);
    for &c in coeffs.iter().rev() {
        der = der * z + val;
        val = val * z + c;
    }
    (val, der)
}

/// `sum |a_k| |z|^k`: the natural magnitude of an evaluation of `p` at `z`,
/// against which residuals are measured.
fn eval_scale(coeffs: &[C64], z: C64) -> f64 {
    let r = z.norm();
    let mut scale = 0.0;
    let mut rk = 1.0;
    for c in coeffs {
        scale += c.norm() * rk;
        rk *= r;
    }
    scale.max(f64::MIN_POSITIVE)
}

fn newton_polish(coeffs: &[C64], start: C64, max_steps: usize) -> C64 {
    let mut z = start;
    let mut best = start;
    let mut best_residual = eval_with_derivative(coeffs, start).0.norm();
    for _ in 0..max_steps {
        let (val, der) = eval_with_derivative(coeffs, z);
        if der.norm() == 0.0 {
            break;
        }
        z -= val / der;
        let residual = eval_with_derivative(coeffs, z).0.norm();
        if residual < best_residual {
            best_residual = residual;
            best = z;
        }
        if residual <= RESIDUAL_FACTOR * eval_scale(coeffs, z) {
            break;
        }
    }
    best
}

/// Starting points on the annuli given by the upper convex hull of
/// `(k, log |a_k|)`: each hull edge of horizontal span `m` contributes `m`
/// guesses on a circle whose radius estimates the moduli of `m` roots.
fn initial_guesses(coeffs: &[C64]) -> Vec<C64> {
    let pts: Vec<(usize, f64)> = coeffs
        .iter()
        .enumerate()
        .filter(|(_, c)| c.norm() > 0.0)
        .map(|(k, c)| (k, c.norm().ln()))
        .collect();

    let mut hull: Vec<(usize, f64)> = Vec::new();
    for &(k, y) in &pts {
        while hull.len() >= 2 {
            let (k1, y1) = hull[hull.len() - 2];
            let (k2, y2) = hull[hull.len() - 1];
            // Drop the middle point unless it lies strictly above the chord.
            let above = (y2 - y1) * (k - k1) as f64 > (y - y1) * (k2 - k1) as f64;
            if above {
                break;
            }
            hull.pop();
        }
        hull.push((k, y));
    }

    let mut guesses = Vec::with_capacity(coeffs.len() - 1);
    for (edge, window) in hull.windows(2).enumerate() {
        let (k1, y1) = window[0];
        let (k2, y2) = window[1];
        let m = k2 - k1;
        let radius = ((y1 - y2) / m as f64).exp();
        for j in 0..m {
            // Offsets stagger annuli against each other and break the
            // conjugation symmetry of real-coefficient inputs.
            let angle = 2.0 * std::f64::consts::PI * (j as f64 + 0.5) / m as f64
                + 0.91 * edge as f64
                + 0.42;
            guesses.push(C64::from_polar(radius, angle));
        }
    }
    guesses
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tol;

    fn assert_multiset_close(found: &[C64], expected: &[C64], tol: f64) {
        assert_eq!(found.len(), expected.len());
        let mut remaining = expected.to_vec();
        for &f in found {
            let (idx, dist) = remaining
                .iter()
                .enumerate()
                .map(|(i, &e)| (i, (f - e).norm()))
                .min_by(|a, b| a.1.partial_cmp(&b.1).unwrap())
                .unwrap();
            assert!(dist < tol, "root {f} is {dist:e} from nearest expected");
            remaining.remove(idx);
        }
    }

    #[test]
    fn recovers_distinct_roots_of_mixed_magnitude() {
        let expected = vec![
            C64::new(1.0, 0.0),
            C64::new(-2.0, 0.0),
            C64::new(0.0, 3.0),
            C64::new(0.001, 0.0),
            C64::new(250.0, -1.0),
        ];
        let p = expand_monic(&expected);
        let found = roots(&p).unwrap();
        assert_multiset_close(&found, &expected, 1e-8);
    }

    #[test]
    fn recovers_roots_one_through_ten() {
        let expected: Vec<C64> = (1..=10).map(|k| C64::new(k as f64, 0.0)).collect();
        let p = expand_monic(&expected);
        let found = roots(&p).unwrap();
        assert_multiset_close(&found, &expected, 1e-5);
    }

    #[test]
    fn twelfth_roots_of_unity() {
        // z^12 - 1.
        let mut coeffs = vec![C64::new(0.0, 0.0); 13];
        coeffs[0] = C64::new(-1.0, 0.0);
        coeffs[12] = C64::new(1.0, 0.0);
        let p = UniPoly::new(coeffs);
        let found = roots(&p).unwrap();
        assert_eq!(found.len(), 12);
        let expected: Vec<C64> = (0..12)
            .map(|k| C64::from_polar(1.0, 2.0 * std::f64::consts::PI * k as f64 / 12.0))
            .collect();
        assert_multiset_close(&found, &expected, 1e-10);
    }

    #[test]
    fn triple_root_clusters_and_refines() {
        let expected = vec![
            C64::new(2.0, 0.0),
            C64::new(2.0, 0.0),
            C64::new(2.0, 0.0),
            C64::new(-1.0, 0.0),
        ];
        let p = expand_monic(&expected);
        // A root of multiplicity m is resolved only to ~eps^(1/m), so the
        // clustering radius must be opened up for multiplicity three: the
        // raw approximations scatter ~1e-6 around the true root.
        let clustered = roots_with_multiplicity(&p, 1e-4).unwrap();
        assert_eq!(clustered.len(), 2);
        let triple = clustered
            .iter()
            .find(|(_, m)| *m == 3)
            .expect("triple root cluster");
        // Individually each approximation carries only ~eps^(1/3) accuracy;
        // the derivative refinement restores far more.
        assert!((triple.0 - C64::new(2.0, 0.0)).norm() < 1e-9);
        let simple = clustered.iter().find(|(_, m)| *m == 1).unwrap();
        assert!((simple.0 - C64::new(-1.0, 0.0)).norm() < 1e-10);
    }

    #[test]
    fn double_double_pattern() {
        // Root multiset {2, 2}: the signature of a line touching a quartic
        // at two points, so the clusterer must report it exactly.
        let expected = vec![
            C64::new(0.5, 0.25),
            C64::new(0.5, 0.25),
            C64::new(-1.5, 1.0),
            C64::new(-1.5, 1.0),
        ];
        let p = expand_monic(&expected);
        let clustered = roots_with_multiplicity(&p, tol::ROOT_CLUSTER_REL).unwrap();
        let mults: Vec<usize> = clustered.iter().map(|(_, m)| *m).collect();
        assert_eq!(mults, vec![2, 2]);
        for (centre, _) in &clustered {
            let err = expected
                .iter()
                .map(|e| (centre - e).norm())
                .fold(f64::INFINITY, f64::min);
            assert!(err < 1e-9);
        }
    }

    #[test]
    fn exact_zero_roots_are_stripped_first() {
        // z^3 (z - 1)
        let p = UniPoly::new(vec![
            C64::new(0.0, 0.0),
            C64::new(0.0, 0.0),
            C64::new(0.0, 0.0),
            C64::new(-1.0, 0.0),
            C64::new(1.0, 0.0),
        ]);
        let clustered = roots_with_multiplicity(&p, tol::ROOT_CLUSTER_REL).unwrap();
        assert_eq!(clustered.len(), 2);
        assert_eq!(clustered[0], (C64::new(0.0, 0.0), 3));
        assert!((clustered[1].0 - C64::new(1.0, 0.0)).norm() < 1e-12);
        assert_eq!(clustered[1].1, 1);
    }

    #[test]
    fn scaling_all_coefficients_leaves_roots_fixed() {
        let expected = vec![C64::new(3.0, 1.0), C64::new(-0.5, 0.0), C64::new(0.0, -2.0)];
        let p = expand_monic(&expected).scale(&C64::new(1e10, 0.0));
        let found = roots(&p).unwrap();
        assert_multiset_close(&found, &expected, 1e-9);
    }

    #[test]
    fn residuals_are_backward_small() {
        let expected: Vec<C64> = (0..12)
            .map(|k| C64::new((k as f64 * 0.37).sin() * 3.0, (k as f64 * 0.61).cos()))
            .collect();
        let p = expand_monic(&expected);
        for z in roots(&p).unwrap() {
            let scale = eval_scale(p.coeffs(), z);
            assert!(p.eval(&z).norm() <= 1e-12 * scale);
        }
    }

    #[test]
    fn rejects_zero_polynomial() {
        let p: UniPoly<C64> = UniPoly::zero();
        assert!(roots(&p).is_err());
    }

    #[test]
    fn constant_has_no_roots() {
        let p = UniPoly::new(vec![C64::new(5.0, 0.0)]);
        assert!(roots(&p).unwrap().is_empty());
    }
}
