//! Sparse homogeneous multivariate polynomials.

use crate::error::{Error, Result};
use crate::point::ProjPoint;
use crate::poly::bi::BiPoly;
use crate::poly::uni::UniPoly;
use crate::scalar::{Coeff, Rat, C64};
use std::collections::BTreeMap;

/// A homogeneous polynomial in `num_vars` variables, stored as a sorted map
/// from exponent vector to nonzero coefficient.
///
/// Invariants: every exponent vector has length `num_vars` and sums to
/// `degree`; no stored coefficient is (exactly) zero.  The zero polynomial is
/// the empty map and still carries its nominal degree, so sums and
/// restrictions keep a well-defined grading.
#[derive(Debug, Clone, PartialEq)]
pub struct MultiPoly<C: Coeff> {
    num_vars: usize,
    degree: u32,
    terms: BTreeMap<Vec<u32>, C>,
}

impl<C: Coeff> MultiPoly<C> {
    /// Build from `(exponents, coefficient)` pairs, validating homogeneity.
    /// Exact zero coefficients are dropped; duplicated exponents are summed.
    pub fn new(
        num_vars: usize,
        degree: u32,
        terms: impl IntoIterator<Item = (Vec<u32>, C)>,
    ) -> Result<Self> {
        let mut map: BTreeMap<Vec<u32>, C> = BTreeMap::new();
        for (exp, c) in terms {
            if exp.len() != num_vars {
                return Err(Error::DimensionMismatch(format!(
                    "exponent vector of length {} in a {}-variable polynomial",
                    exp.len(),
                    num_vars
                )));
            }
            if exp.iter().sum::<u32>() != degree {
                return Err(Error::InvalidPolynomial(format!(
                    "term {:?} is not homogeneous of degree {}",
                    exp, degree
                )));
            }
            let entry = map.entry(exp).or_insert_with(C::zero);
            *entry = entry.clone() + c;
        }
        map.retain(|_, c| !c.is_zero());
        Ok(MultiPoly {
            num_vars,
            degree,
            terms: map,
        })
    }

    /// The zero polynomial of the given grading.
    pub fn zero_poly(num_vars: usize, degree: u32) -> Self {
        MultiPoly {
            num_vars,
            degree,
            terms: BTreeMap::new(),
        }
    }

    /// Single monomial `c * x^exp`.
    pub fn monomial(exp: Vec<u32>, c: C) -> Self {
        let num_vars = exp.len();
        let degree = exp.iter().sum();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        MultiPoly {
            num_vars,
            degree,
            terms,
        }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in lexicographic exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &C)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    /// Coefficient of one monomial (zero if absent).
    pub fn coeff(&self, exp: &[u32]) -> C {
        self.terms.get(exp).cloned().unwrap_or_else(C::zero)
    }

    /// Largest coefficient magnitude (0 for the zero polynomial).
    pub fn norm_inf(&self) -> f64 {
        self.terms
            .values()
            .map(Coeff::magnitude)
            .fold(0.0, f64::max)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_grading(other)?;
        let mut terms = self.terms.clone();
        for (e, c) in &other.terms {
            let entry = terms.entry(e.clone()).or_insert_with(C::zero);
            *entry = entry.clone() + c.clone();
        }
        terms.retain(|_, c| !c.is_zero());
        Ok(MultiPoly {
            num_vars: self.num_vars,
            degree: self.degree,
            terms,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&(-C::one())))
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero_poly(self.num_vars, self.degree);
        }
        let terms = self
            .terms
            .iter()
            .map(|(e, v)| (e.clone(), v.clone() * c.clone()))
            .filter(|(_, v)| !v.is_zero())
            .collect();
        MultiPoly {
            num_vars: self.num_vars,
            degree: self.degree,
            terms,
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.num_vars != other.num_vars {
            return Err(Error::DimensionMismatch(
                "product of polynomials in different variable counts".into(),
            ));
        }
        let mut terms: BTreeMap<Vec<u32>, C> = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let exp: Vec<u32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                let entry = terms.entry(exp).or_insert_with(C::zero);
                *entry = entry.clone() + ca.clone() * cb.clone();
            }
        }
        terms.retain(|_, c| !c.is_zero());
        Ok(MultiPoly {
            num_vars: self.num_vars,
            degree: self.degree + other.degree,
            terms,
        })
    }

    /// Partial derivative; the grading drops by one (constants become the
    /// zero polynomial of degree zero).
    pub fn derivative(&self, var: usize) -> Self {
        assert!(var < self.num_vars, "variable index out of range");
        let mut terms: BTreeMap<Vec<u32>, C> = BTreeMap::new();
        for (e, c) in &self.terms {
            if e[var] == 0 {
                continue;
            }
            let mut exp = e.clone();
            let k = exp[var];
            exp[var] -= 1;
            let coeff = c.clone() * C::from_i64(k as i64);
            let entry = terms.entry(exp).or_insert_with(C::zero);
            *entry = entry.clone() + coeff;
        }
        terms.retain(|_, c| !c.is_zero());
        MultiPoly {
            num_vars: self.num_vars,
            degree: self.degree.saturating_sub(1),
            terms,
        }
    }

    /// All partial derivatives.
    pub fn gradient(&self) -> Vec<Self> {
        (0..self.num_vars).map(|i| self.derivative(i)).collect()
    }

    /// Evaluate at a coordinate vector.
    pub fn eval_coords(&self, x: &[C]) -> C {
        assert_eq!(x.len(), self.num_vars, "evaluation point dimension");
        let maxdeg = self.degree as usize;
        // Cache powers of each coordinate up to the degree.
        let mut pows: Vec<Vec<C>> = Vec::with_capacity(self.num_vars);
        for xi in x {
            let mut p = Vec::with_capacity(maxdeg + 1);
            p.push(C::one());
            for k in 1..=maxdeg {
                let prev = p[k - 1].clone();
                p.push(prev * xi.clone());
            }
            pows.push(p);
        }
        let mut acc = C::zero();
        for (e, c) in &self.terms {
            let mut m = c.clone();
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    m = m * pows[i][k as usize].clone();
                }
            }
            acc = acc + m;
        }
        acc
    }

    /// Evaluate at a projective point using its canonical normalization, so
    /// the value is deterministic for a fixed representative convention.
    pub fn eval(&self, p: &ProjPoint<C>) -> C
    where
        ProjPoint<C>: NormalizedCoords<C>,
    {
        self.eval_coords(&p.normalized_coords())
    }

    /// Substitute `x_i <- images[i]` where every image is a linear form in a
    /// common set of new variables.  Homogeneity is preserved.
    pub fn compose_linear(&self, images: &[Self]) -> Result<Self> {
        if images.len() != self.num_vars {
            return Err(Error::DimensionMismatch(format!(
                "{} substitution images for {} variables",
                images.len(),
                self.num_vars
            )));
        }
        let new_vars = images.first().map(|f| f.num_vars).unwrap_or(0);
        for img in images {
            if img.num_vars != new_vars {
                return Err(Error::DimensionMismatch(
                    "substitution images in mixed variable counts".into(),
                ));
            }
            if img.degree != 1 {
                return Err(Error::InvalidPolynomial(
                    "compose_linear needs degree-1 images".into(),
                ));
            }
        }
        // Cache powers of each image up to the largest exponent it receives.
        let mut max_pow = vec![0u32; self.num_vars];
        for (e, _) in &self.terms {
            for (i, &k) in e.iter().enumerate() {
                max_pow[i] = max_pow[i].max(k);
            }
        }
        let mut pows: Vec<Vec<Self>> = Vec::with_capacity(self.num_vars);
        for (i, img) in images.iter().enumerate() {
            let mut p = vec![Self::monomial_one(new_vars)];
            for k in 1..=max_pow[i] {
                let next = p[(k - 1) as usize].mul(img)?;
                p.push(next);
            }
            pows.push(p);
        }
        let mut acc = Self::zero_poly(new_vars, self.degree);
        for (e, c) in &self.terms {
            let mut m = Self::monomial_one(new_vars).scale(c);
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    m = m.mul(&pows[i][k as usize])?;
                }
            }
            acc = acc.add(&m)?;
        }
        Ok(acc)
    }

    /// The constant polynomial 1 (degree 0).
    fn monomial_one(num_vars: usize) -> Self {
        Self::monomial(vec![0; num_vars], C::one())
    }

    /// Restrict to the plane spanned by three points: the result is a ternary
    /// form in plane coordinates `(y0:y1:y2)` with `basis[j] <-> y_j`.
    pub fn restrict_to_plane(&self, basis: &[ProjPoint<C>; 3]) -> Result<Self>
    where
        ProjPoint<C>: NormalizedCoords<C>,
    {
        let coords: Vec<Vec<C>> = basis.iter().map(|p| p.normalized_coords()).collect();
        let images: Vec<Self> = (0..self.num_vars)
            .map(|i| {
                Self::new(
                    3,
                    1,
                    (0..3).map(|j| {
                        let mut e = vec![0u32; 3];
                        e[j] = 1;
                        (e, coords[j][i].clone())
                    }),
                )
            })
            .collect::<Result<_>>()?;
        self.compose_linear(&images)
    }

    /// Restrict to the line through `p` and `q`, parameterized as `p + t q`;
    /// returns the coefficients of the resulting polynomial in `t` (degree at
    /// most `self.degree`; identically zero iff the line lies on the zero
    /// set).  `p` and `q` must span a line.
    pub fn restrict_to_line(&self, p: &ProjPoint<C>, q: &ProjPoint<C>) -> Result<UniPoly<C>>
    where
        ProjPoint<C>: NormalizedCoords<C>,
    {
        let pc = p.normalized_coords();
        let qc = q.normalized_coords();
        if pc.len() != self.num_vars || qc.len() != self.num_vars {
            return Err(Error::DimensionMismatch(
                "line points do not match the polynomial's variables".into(),
            ));
        }
        if !span_is_line(&pc, &qc) {
            return Err(Error::ProportionalPoints);
        }
        // Substitute into the binary form F(s p + t q) and dehomogenize s = 1.
        let images: Vec<Self> = (0..self.num_vars)
            .map(|i| {
                Self::new(
                    2,
                    1,
                    [(vec![1, 0], pc[i].clone()), (vec![0, 1], qc[i].clone())],
                )
            })
            .collect::<Result<_>>()?;
        let binary = self.compose_linear(&images)?;
        let mut coeffs = vec![C::zero(); self.degree as usize + 1];
        for (e, c) in &binary.terms {
            coeffs[e[1] as usize] = c.clone();
        }
        Ok(UniPoly::new(coeffs))
    }

    /// First polar of the form with respect to `p`: `sum_i p_i dF/dx_i`.
    pub fn polar(&self, p: &ProjPoint<C>) -> Result<Self>
    where
        ProjPoint<C>: NormalizedCoords<C>,
    {
        let pc = p.normalized_coords();
        if pc.len() != self.num_vars {
            return Err(Error::DimensionMismatch(
                "polar point does not match the polynomial's variables".into(),
            ));
        }
        let mut acc = Self::zero_poly(self.num_vars, self.degree.saturating_sub(1));
        for (i, pi) in pc.iter().enumerate() {
            acc = acc.add(&self.derivative(i).scale(pi))?;
        }
        Ok(acc)
    }

    /// Determinant of the matrix of second partials, computed division-free.
    pub fn hessian_det(&self) -> Result<Self> {
        let n = self.num_vars;
        let mut mat: Vec<Vec<Self>> = Vec::with_capacity(n);
        for i in 0..n {
            let di = self.derivative(i);
            mat.push((0..n).map(|j| di.derivative(j)).collect());
        }
        det_poly(&mat)
    }

    /// Drop variable `chart` (set it to 1); only for ternary forms, producing
    /// an affine bivariate polynomial in the remaining two variables in
    /// ascending index order.
    pub fn dehomogenize(&self, chart: usize) -> BiPoly<C> {
        assert_eq!(self.num_vars, 3, "dehomogenize expects a ternary form");
        assert!(chart < 3);
        let others: Vec<usize> = (0..3).filter(|&i| i != chart).collect();
        let mut out = BiPoly::zero();
        for (e, c) in &self.terms {
            out.add_term(e[others[0]], e[others[1]], c.clone());
        }
        out
    }

    /// Sum of coefficient magnitudes: an absolute scale for evaluations at
    /// normalized projective points (whose coordinates are at most one).
    pub fn coeff_l1(&self) -> f64 {
        self.terms
            .values()
            .map(|c| c.magnitude())
            .sum::<f64>()
            .max(1e-300)
    }

    /// Exact check of the Euler relation `sum_i x_i dF/dx_i = deg * F`
    /// (meaningful in exact mode; float mode compares to a tolerance).
    pub fn euler_defect(&self) -> Result<Self> {
        let mut acc = Self::zero_poly(self.num_vars, self.degree);
        for i in 0..self.num_vars {
            let mut e = vec![0u32; self.num_vars];
            e[i] = 1;
            let xi = Self::monomial(e, C::one());
            acc = acc.add(&xi.mul(&self.derivative(i))?)?;
        }
        acc.sub(&self.scale(&C::from_i64(self.degree as i64)))
    }

    fn check_same_grading(&self, other: &Self) -> Result<()> {
        if self.num_vars != other.num_vars || self.degree != other.degree {
            return Err(Error::DimensionMismatch(format!(
                "grading mismatch: ({} vars, deg {}) vs ({} vars, deg {})",
                self.num_vars, self.degree, other.num_vars, other.degree
            )));
        }
        Ok(())
    }
}

impl MultiPoly<Rat> {
    /// Lossy conversion to float mode.
    pub fn to_c64(&self) -> MultiPoly<C64> {
        MultiPoly {
            num_vars: self.num_vars,
            degree: self.degree,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), c.to_c64()))
                .collect(),
        }
    }
}

/// Access to canonically normalized coordinates, mode by mode.
pub trait NormalizedCoords<C: Coeff> {
    fn normalized_coords(&self) -> Vec<C>;
}

impl NormalizedCoords<C64> for ProjPoint<C64> {
    fn normalized_coords(&self) -> Vec<C64> {
        self.normalized().coords().to_vec()
    }
}

impl NormalizedCoords<Rat> for ProjPoint<Rat> {
    fn normalized_coords(&self) -> Vec<Rat> {
        self.normalized().coords().to_vec()
    }
}

/// True when the two coordinate vectors are linearly independent, judged by
/// the largest 2x2 minor relative to the coordinate scales.
fn span_is_line<C: Coeff>(p: &[C], q: &[C]) -> bool {
    let np = p.iter().map(Coeff::magnitude).fold(0.0, f64::max);
    let nq = q.iter().map(Coeff::magnitude).fold(0.0, f64::max);
    if np == 0.0 || nq == 0.0 {
        return false;
    }
    let mut best = 0.0f64;
    for i in 0..p.len() {
        for j in (i + 1)..p.len() {
            let minor = p[i].clone() * q[j].clone() - p[j].clone() * q[i].clone();
            best = best.max(minor.magnitude());
        }
    }
    if C::EXACT {
        best > 0.0
    } else {
        best / (np * nq) > 1e-12
    }
}

/// Division-free determinant of a square matrix of polynomials (subset
/// dynamic programming over rows, columns processed left to right).
pub(crate) fn det_poly<C: Coeff>(mat: &[Vec<MultiPoly<C>>]) -> Result<MultiPoly<C>> {
    let n = mat.len();
    assert!(n > 0 && n <= 16, "det_poly supports 1..=16 rows");
    for row in mat {
        assert_eq!(row.len(), n, "determinant of a non-square matrix");
    }
    let num_vars = mat[0][0].num_vars;
    // D[mask] = signed sum over ways to fill the first popcount(mask) columns
    // using exactly the rows in `mask`.
    let mut dp: Vec<Option<MultiPoly<C>>> = vec![None; 1 << n];
    dp[0] = Some(MultiPoly::monomial(vec![0; num_vars], C::one()));
    for mask in 0..(1usize << n) {
        let Some(cur) = dp[mask].clone() else {
            continue;
        };
        let col = mask.count_ones() as usize;
        if col == n {
            continue;
        }
        for r in 0..n {
            if mask & (1 << r) != 0 {
                continue;
            }
            let entry = &mat[r][col];
            let inversions = (mask >> (r + 1)).count_ones();
            let signed = if inversions % 2 == 0 {
                cur.mul(entry)?
            } else {
                cur.mul(entry)?.scale(&(-C::one()))
            };
            let slot = mask | (1 << r);
            dp[slot] = Some(match dp[slot].take() {
                None => signed,
                Some(acc) => acc.add(&signed)?,
            });
        }
    }
    Ok(dp[(1 << n) - 1].take().expect("determinant accumulates"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rat;

    fn rat(n: i64) -> Rat {
        Rat::from_integer(n.into())
    }

    /// x0^4 + x1^4 + x2^4 + x3^4
    fn fermat() -> MultiPoly<Rat> {
        MultiPoly::new(
            4,
            4,
            (0..4).map(|i| {
                let mut e = vec![0u32; 4];
                e[i] = 4;
                (e, rat(1))
            }),
        )
        .unwrap()
    }

    #[test]
    fn rejects_inhomogeneous_terms() {
        let r = MultiPoly::new(2, 3, [(vec![1, 1], rat(1))]);
        assert!(r.is_err());
    }

    #[test]
    fn eval_at_unit_point() {
        // f = x0^4 at (1:0:0:0) evaluates to 1 under the canonical representative.
        let f = MultiPoly::monomial(vec![4, 0, 0, 0], rat(1));
        let p = ProjPoint::new(vec![rat(2), rat(0), rat(0), rat(0)]).unwrap();
        assert_eq!(f.eval(&p), rat(1));
    }

    #[test]
    fn gradient_of_sum_of_fourth_powers() {
        let f = fermat();
        let g = f.gradient();
        assert_eq!(g.len(), 4);
        let p = ProjPoint::new(vec![rat(1), rat(1), rat(0), rat(0)]).unwrap();
        assert_eq!(g[0].eval(&p), rat(4));
        assert_eq!(g[2].eval(&p), rat(0));
    }

    #[test]
    fn euler_relation_holds_exactly() {
        let f = fermat();
        assert!(f.euler_defect().unwrap().is_zero());
    }

    /// Oracle: hand-differentiated coefficient of the binormal form
    /// f = x1^2 (x1 - 2 x0)^2; d f / d x0 = -4 x1^2 (x1 - 2 x0),
    /// which vanishes at (1:0:0:0) and equals -4*9*(3-2) = -36 at x0=1, x1=3.
    #[test]
    fn gradient_matches_hand_differentiation() {
        // (x1^2)(x1 - 2x0)^2 = x1^4 - 4 x0 x1^3 + 4 x0^2 x1^2
        let f = MultiPoly::new(
            4,
            4,
            [
                (vec![0, 4, 0, 0], rat(1)),
                (vec![1, 3, 0, 0], rat(-4)),
                (vec![2, 2, 0, 0], rat(4)),
            ],
        )
        .unwrap();
        let d0 = f.derivative(0);
        let at_origin = ProjPoint::new(vec![rat(1), rat(0), rat(0), rat(0)]).unwrap();
        assert_eq!(d0.eval(&at_origin), rat(0));
        let val = d0.eval_coords(&[rat(1), rat(3), rat(0), rat(0)]);
        assert_eq!(val, rat(-36));
    }

    #[test]
    fn restrict_to_line_of_fermat() {
        let f = fermat();
        let p = ProjPoint::new(vec![rat(1), rat(0), rat(0), rat(0)]).unwrap();
        let q = ProjPoint::new(vec![rat(0), rat(1), rat(0), rat(0)]).unwrap();
        let r = f.restrict_to_line(&p, &q).unwrap();
        // (1)^4 + t^4
        assert_eq!(r.coeffs(), &[rat(1), rat(0), rat(0), rat(0), rat(1)]);
    }

    #[test]
    fn restrict_to_line_rejects_proportional_points() {
        let f = fermat();
        let p = ProjPoint::new(vec![rat(1), rat(2), rat(0), rat(0)]).unwrap();
        let q = ProjPoint::new(vec![rat(2), rat(4), rat(0), rat(0)]).unwrap();
        assert!(matches!(
            f.restrict_to_line(&p, &q),
            Err(Error::ProportionalPoints)
        ));
    }

    #[test]
    fn line_inside_zero_set_restricts_to_zero() {
        // f = x2 * x3^3 vanishes on the line x2 = x3 = 0.
        let f = MultiPoly::monomial(vec![0, 0, 1, 3], rat(1));
        let p = ProjPoint::new(vec![rat(1), rat(0), rat(0), rat(0)]).unwrap();
        let q = ProjPoint::new(vec![rat(0), rat(1), rat(0), rat(0)]).unwrap();
        assert!(f.restrict_to_line(&p, &q).unwrap().is_zero());
    }

    #[test]
    fn hessian_det_of_fermat_is_monomial_square() {
        // Hessian of sum x_i^4 is diag(12 x_i^2); determinant 20736 (x0x1x2x3)^2.
        let f = fermat();
        let h = f.hessian_det().unwrap();
        assert_eq!(h.degree(), 8);
        assert_eq!(h.num_terms(), 1);
        assert_eq!(h.coeff(&[2, 2, 2, 2]), rat(20736));
    }

    /// Oracle: Leibniz 24-permutation expansion, written independently of the
    /// subset-DP determinant.
    fn det_leibniz(mat: &[Vec<MultiPoly<Rat>>]) -> MultiPoly<Rat> {
        fn perms(n: usize) -> Vec<(Vec<usize>, i64)> {
            let mut out = vec![(vec![], 1i64)];
            for _ in 0..n {
                let mut next = Vec::new();
                for (p, s) in out {
                    for v in 0..n {
                        if !p.contains(&v) {
                            let inv = p.iter().filter(|&&u| u > v).count();
                            let mut q = p.clone();
                            q.push(v);
                            next.push((q, s * if inv % 2 == 0 { 1 } else { -1 }));
                        }
                    }
                }
                out = next;
            }
            out
        }
        let n = mat.len();
        let mut acc: Option<MultiPoly<Rat>> = None;
        for (perm, sign) in perms(n) {
            let mut prod = MultiPoly::monomial(vec![0; mat[0][0].num_vars()], rat(sign));
            for (col, &row) in perm.iter().enumerate() {
                prod = prod.mul(&mat[row][col]).unwrap();
            }
            acc = Some(match acc {
                None => prod,
                Some(a) => a.add(&prod).unwrap(),
            });
        }
        acc.unwrap()
    }

    #[test]
    fn hessian_det_matches_leibniz_oracle() {
        // A denser quartic: fermat + x0 x1 x2 x3 + x0^2 x1^2.
        let f = fermat()
            .add(&MultiPoly::monomial(vec![1, 1, 1, 1], rat(1)))
            .unwrap()
            .add(&MultiPoly::monomial(vec![2, 2, 0, 0], rat(3)))
            .unwrap();
        let mut mat = Vec::new();
        for i in 0..4 {
            let di = f.derivative(i);
            mat.push((0..4).map(|j| di.derivative(j)).collect::<Vec<_>>());
        }
        let dp = det_poly(&mat).unwrap();
        let oracle = det_leibniz(&mat);
        assert_eq!(dp, oracle);
    }

    #[test]
    fn restriction_commutes_with_evaluation() {
        // Exact check: F(plane(y)) == (F|_plane)(y) for rational data.
        let f = fermat()
            .add(&MultiPoly::monomial(vec![1, 1, 1, 1], rat(-2)))
            .unwrap();
        let basis = [
            ProjPoint::new(vec![rat(1), rat(2), rat(0), rat(1)]).unwrap(),
            ProjPoint::new(vec![rat(0), rat(1), rat(1), rat(-1)]).unwrap(),
            ProjPoint::new(vec![rat(3), rat(0), rat(1), rat(2)]).unwrap(),
        ];
        let g = f.restrict_to_plane(&basis).unwrap();
        let y = [rat(2), rat(-1), rat(3)];
        let coords: Vec<Rat> = (0..4)
            .map(|i| {
                let b: Vec<Vec<Rat>> = basis.iter().map(|p| p.normalized_coords()).collect();
                b[0][i].clone() * y[0].clone()
                    + b[1][i].clone() * y[1].clone()
                    + b[2][i].clone() * y[2].clone()
            })
            .collect();
        assert_eq!(g.eval_coords(&y), f.eval_coords(&coords));
    }

    #[test]
    fn polar_is_gradient_pairing() {
        // polar(f, p)(q) == <p, grad f(q)> exactly.
        let f = fermat()
            .add(&MultiPoly::monomial(vec![2, 1, 1, 0], rat(5)))
            .unwrap();
        let p = ProjPoint::new(vec![rat(1), rat(-2), rat(3), rat(1)]).unwrap();
        let q = [rat(2), rat(1), rat(0), rat(-1)];
        let polar = f.polar(&p).unwrap();
        let grad = f.gradient();
        let pc = p.normalized_coords();
        let expect: Rat = (0..4)
            .map(|i| pc[i].clone() * grad[i].eval_coords(&q))
            .fold(rat(0), |a, b| a + b);
        assert_eq!(polar.eval_coords(&q), expect);
    }
}
