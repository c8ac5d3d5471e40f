//! Lines in projective 3-space: a stored spanning pair plus the cached
//! Plücker coordinate vector used for comparison, deduplication, and
//! deterministic ordering.

use crate::error::{Error, Result};
use crate::point::ProjPoint;
use crate::scalar::{Coeff, C64};

/// Relative wedge size below which two spanning points are treated as
/// proportional and rejected.
const SPAN_WEDGE_REL: f64 = 1e-12;

/// A projective line `l ⊂ P^3`, stored both ways: as an ordered pair of
/// spanning points (which fixes an affine parameterization `t ↦ a + t b`)
/// and as the Plücker point `(p01 : p02 : p03 : p12 : p13 : p23) ∈ P^5`.
///
/// The Plücker vector is computed from the *normalized* representatives of
/// the spanning points, then normalized itself, so two `PlueckerLine`s
/// describe the same line exactly when their `pluecker()` points have
/// projective distance zero — regardless of which spanning pair was used.
#[derive(Debug, Clone)]
pub struct PlueckerLine {
    span: (ProjPoint<C64>, ProjPoint<C64>),
    pluecker: ProjPoint<C64>,
}

impl PlueckerLine {
    /// The line through two distinct points.  Fails with
    /// [`Error::ProportionalPoints`] when the wedge `a ∧ b` is negligible
    /// relative to the coordinate sizes.
    pub fn through(a: ProjPoint<C64>, b: ProjPoint<C64>) -> Result<Self> {
        if a.ncoords() != 4 || b.ncoords() != 4 {
            return Err(Error::DimensionMismatch(format!(
                "a line in P^3 needs 4-coordinate points, got {} and {}",
                a.ncoords(),
                b.ncoords()
            )));
        }
        let an = a.normalized();
        let bn = b.normalized();
        let wedge = wedge_coords(an.coords(), bn.coords());
        let scale: f64 = an
            .coords()
            .iter()
            .map(|c| c.magnitude())
            .sum::<f64>()
            .max(1e-300)
            * bn.coords().iter().map(|c| c.magnitude()).sum::<f64>();
        let wedge_mag = wedge.iter().map(|c| c.magnitude()).fold(0.0, f64::max);
        if wedge_mag <= SPAN_WEDGE_REL * scale {
            return Err(Error::ProportionalPoints);
        }
        let pluecker = ProjPoint::new(wedge.to_vec())?;
        Ok(PlueckerLine {
            span: (an, bn),
            pluecker,
        })
    }

    /// The spanning pair, in normalized coordinates, defining the
    /// parameterization `point_at`.
    pub fn span(&self) -> (&ProjPoint<C64>, &ProjPoint<C64>) {
        (&self.span.0, &self.span.1)
    }

    /// The Plücker point `(p01 : p02 : p03 : p12 : p13 : p23)`.
    pub fn pluecker(&self) -> &ProjPoint<C64> {
        &self.pluecker
    }

    /// Residual of the Plücker quadric `p01 p23 - p02 p13 + p03 p12 = 0`
    /// on the normalized Plücker vector.  Identically ~0 for any vector
    /// built from an actual wedge; exposed so consumers of serialized data
    /// can re-check a claimed line.
    pub fn quadric_residual(&self) -> f64 {
        let p = self.pluecker.coords();
        (p[0] * p[5] - p[1] * p[4] + p[2] * p[3]).magnitude()
    }

    /// The point `a + t b` of the line, in the stored parameterization.
    /// `t = 0` gives the first spanning point; the second spanning point is
    /// the point at `t = ∞`.
    pub fn point_at(&self, t: C64) -> ProjPoint<C64> {
        let a = self.span.0.coords();
        let b = self.span.1.coords();
        let coords: Vec<C64> = (0..4).map(|i| a[i] + t * b[i]).collect();
        // a and b are independent, so the combination never vanishes.
        ProjPoint::new(coords).expect("combination of independent points")
    }

    /// Incidence residual of a point against the line: the sine of the
    /// angle between `p` and the plane spanned by the two spanning points.
    /// Zero (up to roundoff) exactly when `p` lies on the line.
    pub fn incidence_residual(&self, p: &ProjPoint<C64>) -> f64 {
        let pn = p.normalized();
        let a = self.span.0.coords();
        let b = self.span.1.coords();
        // Project pn orthogonally (Hermitian) onto span(a, b) and measure
        // what is left.  Gram-Schmidt the spanning pair first.
        let mut u = a.to_vec();
        normalize(&mut u);
        let mut w = b.to_vec();
        let d = dot_conj(&u, &w);
        for i in 0..4 {
            w[i] -= d * u[i];
        }
        normalize(&mut w);
        let mut r = pn.coords().to_vec();
        let du = dot_conj(&u, &r);
        let dw = dot_conj(&w, &r);
        let mut rem = 0.0f64;
        let mut tot = 0.0f64;
        for i in 0..4 {
            r[i] -= du * u[i] + dw * w[i];
            rem += r[i].norm_sqr();
            tot += pn.coords()[i].norm_sqr();
        }
        (rem / tot.max(1e-300)).sqrt()
    }

    /// True when the point lies on the line within `tol` (angular).
    pub fn contains(&self, p: &ProjPoint<C64>, tol: f64) -> bool {
        self.incidence_residual(p) <= tol
    }

    /// Projective distance between two lines, measured between their
    /// Plücker points.  Zero exactly for equal lines.
    pub fn proj_distance(&self, other: &PlueckerLine) -> f64 {
        self.pluecker.proj_distance(&other.pluecker)
    }

    /// Deterministic ordering key: the lexicographic key of the normalized
    /// Plücker vector.  Reports sort fibers with this so equal inputs give
    /// byte-identical output.
    pub fn sort_key(&self) -> Vec<(f64, f64)> {
        self.pluecker.sort_key()
    }
}

/// The six wedge coordinates `a_i b_j - a_j b_i` for `i < j` in the order
/// `(01, 02, 03, 12, 13, 23)`.
fn wedge_coords(a: &[C64], b: &[C64]) -> [C64; 6] {
    let mut out = [C64::new(0.0, 0.0); 6];
    let mut k = 0;
    for i in 0..4 {
        for j in (i + 1)..4 {
            out[k] = a[i] * b[j] - a[j] * b[i];
            k += 1;
        }
    }
    out
}

fn dot_conj(u: &[C64], v: &[C64]) -> C64 {
    u.iter().zip(v).map(|(a, b)| a.conj() * b).sum()
}

fn normalize(v: &mut [C64]) {
    let n = v.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
    if n > 0.0 {
        for c in v.iter_mut() {
            *c /= n;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(cs: [f64; 4]) -> ProjPoint<C64> {
        ProjPoint::new(cs.iter().map(|&x| C64::new(x, 0.0)).collect()).unwrap()
    }

    #[test]
    fn pluecker_vector_satisfies_the_quadric() {
        let l =
            PlueckerLine::through(pt([1.0, 2.0, -1.0, 3.0]), pt([0.5, -1.0, 4.0, 2.0])).unwrap();
        assert!(l.quadric_residual() < 1e-14);
    }

    #[test]
    fn different_spans_of_one_line_agree() {
        let a = pt([1.0, 2.0, -1.0, 3.0]);
        let b = pt([0.5, -1.0, 4.0, 2.0]);
        let l1 = PlueckerLine::through(a.clone(), b.clone()).unwrap();
        // Span by two other combinations of the same points.
        let c = l1.point_at(C64::new(0.75, 0.25));
        let d = l1.point_at(C64::new(-2.0, 1.0));
        let l2 = PlueckerLine::through(c, d).unwrap();
        assert!(l1.proj_distance(&l2) < 1e-12);
        assert_eq!(l1.sort_key().len(), 6);
    }

    #[test]
    fn contains_the_span_and_parameterized_points() {
        let a = pt([1.0, 0.0, 2.0, 0.0]);
        let b = pt([0.0, 1.0, 0.0, -1.0]);
        let l = PlueckerLine::through(a.clone(), b.clone()).unwrap();
        assert!(l.contains(&a, 1e-12));
        assert!(l.contains(&b, 1e-12));
        assert!(l.contains(&l.point_at(C64::new(17.0, -3.0)), 1e-12));
        let off = pt([1.0, 1.0, 0.0, 0.0]);
        assert!(l.incidence_residual(&off) > 1e-2);
    }

    #[test]
    fn proportional_points_are_rejected() {
        let a = pt([1.0, 2.0, -1.0, 3.0]);
        let b = ProjPoint::new(
            a.coords()
                .iter()
                .map(|c| *c * C64::new(-2.5, 1.0))
                .collect(),
        )
        .unwrap();
        assert!(matches!(
            PlueckerLine::through(a, b),
            Err(Error::ProportionalPoints)
        ));
    }
}
