//! Sparse affine bivariate polynomials.
//!
//! Used for dehomogenized plane curves, singularity germs, and the two-
//! parameter direction charts of the bitangent solver.  Unlike
//! [`MultiPoly`](crate::poly::MultiPoly) these are *affine*: no homogeneity
//! invariant, and total degree is whatever the terms say.

use crate::poly::uni::UniPoly;
use crate::scalar::{Coeff, Rat, C64};
use std::collections::BTreeMap;

/// `sum c_{ij} x^i y^j` with sorted sparse storage.
#[derive(Debug, Clone, PartialEq)]
pub struct BiPoly<C: Coeff> {
    terms: BTreeMap<(u32, u32), C>,
}

impl<C: Coeff> Default for BiPoly<C> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<C: Coeff> BiPoly<C> {
    pub fn zero() -> Self {
        BiPoly {
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: C) -> Self {
        let mut p = Self::zero();
        p.add_term(0, 0, c);
        p
    }

    /// `c * x^i y^j` added in place (zeros are stripped).
    pub fn add_term(&mut self, i: u32, j: u32, c: C) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry((i, j)).or_insert_with(C::zero);
        *entry = entry.clone() + c;
        if entry.is_zero() {
            self.terms.remove(&(i, j));
        }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (u32, u32, C)>) -> Self {
        let mut p = Self::zero();
        for (i, j, c) in terms {
            p.add_term(i, j, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = ((u32, u32), &C)> {
        self.terms.iter().map(|(&e, c)| (e, c))
    }

    pub fn coeff(&self, i: u32, j: u32) -> C {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(C::zero)
    }

    /// Total degree, `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|&(i, j)| i + j).max()
    }

    pub fn deg_x(&self) -> Option<u32> {
        self.terms.keys().map(|&(i, _)| i).max()
    }

    pub fn deg_y(&self) -> Option<u32> {
        self.terms.keys().map(|&(_, j)| j).max()
    }

    pub fn norm_inf(&self) -> f64 {
        self.terms
            .values()
            .map(Coeff::magnitude)
            .fold(0.0, f64::max)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&(i, j), c) in &other.terms {
            out.add_term(i, j, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&(-C::one())))
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        BiPoly {
            terms: self
                .terms
                .iter()
                .map(|(&e, v)| (e, v.clone() * c.clone()))
                .filter(|(_, v)| !v.is_zero())
                .collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (&(ia, ja), ca) in &self.terms {
            for (&(ib, jb), cb) in &other.terms {
                out.add_term(ia + ib, ja + jb, ca.clone() * cb.clone());
            }
        }
        out
    }

    /// Drop all terms of total degree above `maxdeg`.
    pub fn truncate(&self, maxdeg: u32) -> Self {
        BiPoly {
            terms: self
                .terms
                .iter()
                .filter(|(&(i, j), _)| i + j <= maxdeg)
                .map(|(&e, c)| (e, c.clone()))
                .collect(),
        }
    }

    pub fn eval(&self, x: &C, y: &C) -> C {
        let dx = self.deg_x().unwrap_or(0) as usize;
        let dy = self.deg_y().unwrap_or(0) as usize;
        let mut px = Vec::with_capacity(dx + 1);
        px.push(C::one());
        for k in 1..=dx {
            let prev = px[k - 1].clone();
            px.push(prev * x.clone());
        }
        let mut py = Vec::with_capacity(dy + 1);
        py.push(C::one());
        for k in 1..=dy {
            let prev = py[k - 1].clone();
            py.push(prev * y.clone());
        }
        let mut acc = C::zero();
        for (&(i, j), c) in &self.terms {
            acc = acc + c.clone() * px[i as usize].clone() * py[j as usize].clone();
        }
        acc
    }

    pub fn partial_x(&self) -> Self {
        let mut out = Self::zero();
        for (&(i, j), c) in &self.terms {
            if i > 0 {
                out.add_term(i - 1, j, c.clone() * C::from_i64(i as i64));
            }
        }
        out
    }

    pub fn partial_y(&self) -> Self {
        let mut out = Self::zero();
        for (&(i, j), c) in &self.terms {
            if j > 0 {
                out.add_term(i, j - 1, c.clone() * C::from_i64(j as i64));
            }
        }
        out
    }

    /// Substitute `x <- px(u, v)`, `y <- py(u, v)`, optionally truncating the
    /// result (and all intermediate powers) to a total degree.
    pub fn subst(&self, px: &Self, py: &Self, maxdeg: Option<u32>) -> Self {
        let cap = |p: Self| match maxdeg {
            Some(d) => p.truncate(d),
            None => p,
        };
        let dx = self.deg_x().unwrap_or(0);
        let dy = self.deg_y().unwrap_or(0);
        let mut pxp = vec![Self::constant(C::one())];
        for k in 1..=dx {
            let next = cap(pxp[(k - 1) as usize].mul(px));
            pxp.push(next);
        }
        let mut pyp = vec![Self::constant(C::one())];
        for k in 1..=dy {
            let next = cap(pyp[(k - 1) as usize].mul(py));
            pyp.push(next);
        }
        let mut acc = Self::zero();
        for (&(i, j), c) in &self.terms {
            let m = cap(pxp[i as usize].mul(&pyp[j as usize]).scale(c));
            acc = acc.add(&m);
        }
        cap(acc)
    }

    /// View as a polynomial in `y` whose coefficients are evaluated at a
    /// fixed `x`; returns constant-first coefficients of length `deg_y + 1`.
    pub fn y_coeffs_at(&self, x: &C) -> Vec<C> {
        let dy = self.deg_y().unwrap_or(0) as usize;
        let dx = self.deg_x().unwrap_or(0) as usize;
        let mut px = Vec::with_capacity(dx + 1);
        px.push(C::one());
        for k in 1..=dx {
            let prev = px[k - 1].clone();
            px.push(prev * x.clone());
        }
        let mut out = vec![C::zero(); dy + 1];
        for (&(i, j), c) in &self.terms {
            out[j as usize] = out[j as usize].clone() + c.clone() * px[i as usize].clone();
        }
        out
    }

    /// Collect the coefficient of `y^j` as a univariate polynomial in `x`.
    pub fn coeff_of_y(&self, j: u32) -> UniPoly<C> {
        let dx = self.deg_x().unwrap_or(0) as usize;
        let mut coeffs = vec![C::zero(); dx + 1];
        for (&(i, jj), c) in &self.terms {
            if jj == j {
                coeffs[i as usize] = c.clone();
            }
        }
        UniPoly::new(coeffs)
    }

    /// The sum of coefficient magnitudes scaled by `max(1,|x|)^i max(1,|y|)^j`;
    /// a natural scale for relative residuals at `(x, y)`.
    pub fn value_scale(&self, x: &C, y: &C) -> f64 {
        let rx = x.magnitude().max(1.0);
        let ry = y.magnitude().max(1.0);
        let mut acc = 0.0;
        for (&(i, j), c) in &self.terms {
            acc += c.magnitude() * rx.powi(i as i32) * ry.powi(j as i32);
        }
        acc.max(1e-300)
    }
}

impl BiPoly<Rat> {
    pub fn to_c64(&self) -> BiPoly<C64> {
        BiPoly {
            terms: self.terms.iter().map(|(&e, c)| (e, c.to_c64())).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    fn c(re: f64) -> C64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn arithmetic_and_eval() {
        // p = x^2 + 2xy - y
        let p = BiPoly::from_terms([(2, 0, c(1.0)), (1, 1, c(2.0)), (0, 1, c(-1.0))]);
        assert_eq!(p.total_degree(), Some(2));
        assert_eq!(p.eval(&c(2.0), &c(3.0)), c(4.0 + 12.0 - 3.0));
        let q = p.partial_x(); // 2x + 2y
        assert_eq!(q.eval(&c(2.0), &c(3.0)), c(10.0));
    }

    #[test]
    fn substitution_matches_direct_eval() {
        // p(x, y) with x <- u + v, y <- u*v: check at a sample point.
        let p = BiPoly::from_terms([(2, 1, c(1.0)), (0, 2, c(-3.0))]);
        let px = BiPoly::from_terms([(1, 0, c(1.0)), (0, 1, c(1.0))]);
        let py = BiPoly::from_terms([(1, 1, c(1.0))]);
        let s = p.subst(&px, &py, None);
        let (u, v) = (c(1.5), c(-0.5));
        let x = u + v;
        let y = u * v;
        assert!((s.eval(&u, &v) - p.eval(&x, &y)).norm() < 1e-12);
    }

    #[test]
    fn truncation_caps_total_degree() {
        let p = BiPoly::from_terms([(3, 2, c(1.0)), (1, 1, c(1.0))]);
        let t = p.truncate(3);
        assert_eq!(t.num_terms(), 1);
        assert_eq!(t.coeff(1, 1), c(1.0));
    }

    #[test]
    fn y_coefficients_at_sample() {
        // p = (1 + x) y^2 + x^2
        let p = BiPoly::from_terms([(0, 2, c(1.0)), (1, 2, c(1.0)), (2, 0, c(1.0))]);
        let at = p.y_coeffs_at(&c(2.0));
        assert_eq!(at, vec![c(4.0), c(0.0), c(3.0)]);
    }
}
