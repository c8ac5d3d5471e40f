//! Dense univariate polynomials (coefficients stored constant-first).

use crate::scalar::{Coeff, Rat, C64};

/// A univariate polynomial `c[0] + c[1] t + ... + c[d] t^d`.
///
/// Exact zero leading coefficients are trimmed on construction, so
/// `degree()` reflects stored structure; float callers that need an
/// *effective* degree after roundoff use [`UniPoly::trim_relative`].
#[derive(Debug, Clone, PartialEq)]
pub struct UniPoly<C: Coeff> {
    coeffs: Vec<C>,
}

impl<C: Coeff> UniPoly<C> {
    pub fn new(mut coeffs: Vec<C>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree of the stored polynomial; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> C {
        self.coeffs.get(k).cloned().unwrap_or_else(C::zero)
    }

    pub fn leading(&self) -> Option<&C> {
        self.coeffs.last()
    }

    pub fn norm_inf(&self) -> f64 {
        self.coeffs.iter().map(Coeff::magnitude).fold(0.0, f64::max)
    }

    pub fn eval(&self, t: &C) -> C {
        let mut acc = C::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * t.clone() + c.clone();
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Self::zero();
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c.clone() * C::from_i64(k as i64))
            .collect();
        Self::new(coeffs)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|k| self.coeff(k) + other.coeff(k)).collect();
        Self::new(coeffs)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|k| self.coeff(k) - other.coeff(k)).collect();
        Self::new(coeffs)
    }

    pub fn scale(&self, c: &C) -> Self {
        Self::new(self.coeffs.iter().map(|v| v.clone() * c.clone()).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![C::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = coeffs[i + j].clone() + a.clone() * b.clone();
            }
        }
        Self::new(coeffs)
    }

    /// Scale so the leading coefficient is one (no-op on the zero polynomial).
    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some(l) => {
                let inv = C::one() / l.clone();
                self.scale(&inv)
            }
        }
    }
}

impl UniPoly<C64> {
    /// Drop leading coefficients smaller than `eps` relative to the largest
    /// coefficient; returns the effectively lower-degree polynomial.
    pub fn trim_relative(&self, eps: f64) -> Self {
        let scale = self.norm_inf();
        if scale == 0.0 {
            return Self::zero();
        }
        let mut coeffs = self.coeffs.clone();
        while coeffs.last().is_some_and(|c| c.magnitude() < eps * scale) {
            coeffs.pop();
        }
        Self::new(coeffs)
    }

    /// Largest magnitude the polynomial can attain on `|t| <= max(1, |t0|)`;
    /// a cheap natural scale for relative residuals at `t0`.
    pub fn value_scale(&self, t0: C64) -> f64 {
        let r = t0.norm().max(1.0);
        let mut pow = 1.0;
        let mut acc = 0.0;
        for c in &self.coeffs {
            acc += c.norm() * pow;
            pow *= r;
        }
        acc.max(1e-300)
    }
}

impl UniPoly<Rat> {
    pub fn to_c64(&self) -> UniPoly<C64> {
        UniPoly::new(self.coeffs.iter().map(Coeff::to_c64).collect())
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
    fn trims_exact_zero_leading_terms() {
        let p = UniPoly::new(vec![c(1.0), c(2.0), c(0.0), c(0.0)]);
        assert_eq!(p.degree(), Some(1));
    }

    #[test]
    fn horner_eval_and_derivative() {
        // p = 1 - 3t + 2t^3, p(2) = 1 - 6 + 16 = 11, p'(t) = -3 + 6t^2.
        let p = UniPoly::new(vec![c(1.0), c(-3.0), c(0.0), c(2.0)]);
        assert_eq!(p.eval(&c(2.0)), c(11.0));
        assert_eq!(p.derivative().coeffs(), &[c(-3.0), c(0.0), c(6.0)]);
    }

    #[test]
    fn product_degrees_add() {
        let p = UniPoly::new(vec![c(1.0), c(1.0)]);
        let q = UniPoly::new(vec![c(-1.0), c(1.0)]);
        let r = p.mul(&q);
        assert_eq!(r.coeffs(), &[c(-1.0), c(0.0), c(1.0)]);
    }

    #[test]
    fn relative_trim_drops_roundoff_leading_dust() {
        let p = UniPoly::new(vec![c(1.0), c(1.0), c(1e-15)]);
        assert_eq!(p.degree(), Some(2));
        assert_eq!(p.trim_relative(1e-12).degree(), Some(1));
    }
}
