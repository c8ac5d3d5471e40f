//! Determinant kernels: fraction-free scalar determinants, Sylvester-type
//! matrices, and the subresultant pair that certifies doubled root structure.

use crate::error::{Error, Result};
use crate::poly::bi::BiPoly;
use crate::poly::uni::UniPoly;
use crate::scalar::Coeff;

/// Determinant by fraction-free (Bareiss) elimination with magnitude
/// pivoting.  Exact over a field; numerically the pivoting keeps the
/// small dense cases used here (at most 24 x 24) stable.
pub fn bareiss_det<C: Coeff>(mut m: Vec<Vec<C>>) -> C {
    let n = m.len();
    if n == 0 {
        return C::one();
    }
    debug_assert!(m.iter().all(|r| r.len() == n), "square matrix required");
    let mut sign_flip = false;
    let mut prev = C::one();
    for k in 0..n {
        // Pivot: the largest magnitude in column k at or below row k.
        let (pivot_row, pivot_mag) = (k..n)
            .map(|r| (r, m[r][k].magnitude()))
            .max_by(|a, b| a.1.total_cmp(&b.1))
            .expect("nonempty pivot range");
        if pivot_mag == 0.0 || m[pivot_row][k].is_zero() {
            return C::zero();
        }
        if pivot_row != k {
            m.swap(pivot_row, k);
            sign_flip = !sign_flip;
        }
        if k + 1 == n {
            break;
        }
        for i in (k + 1)..n {
            for j in (k + 1)..n {
                let num = m[i][j].clone() * m[k][k].clone() - m[i][k].clone() * m[k][j].clone();
                m[i][j] = num / prev.clone();
            }
            m[i][k] = C::zero();
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if sign_flip {
        -det
    } else {
        det
    }
}

/// The square matrix whose determinant is the order-`k` principal
/// subresultant coefficient of `p` (degree `m`) and `q` (degree `n`):
/// `n - k` shifted copies of `p` over `m - k` shifted copies of `q`,
/// restricted to the leading `m + n - 2k` columns.  `k = 0` gives the full
/// Sylvester matrix, whose determinant is the resultant.
pub fn sylvester_submatrix<T: Clone>(p: &[T], q: &[T], k: usize, zero: T) -> Vec<Vec<T>> {
    let m = p.len() - 1;
    let n = q.len() - 1;
    assert!(m >= 1 && n >= 1, "both degrees must be positive");
    assert!(k < n.min(m), "subresultant order out of range");
    let size = m + n - 2 * k;
    let mut rows = Vec::with_capacity(size);
    for i in 0..(n - k) {
        let mut row = Vec::with_capacity(size);
        for c in 0..size {
            // Entry is the coefficient of t^(m - c + i) in p.
            let idx = m as isize - c as isize + i as isize;
            row.push(if (0..=m as isize).contains(&idx) {
                p[idx as usize].clone()
            } else {
                zero.clone()
            });
        }
        rows.push(row);
    }
    for j in 0..(m - k) {
        let mut row = Vec::with_capacity(size);
        for c in 0..size {
            let idx = n as isize - c as isize + j as isize;
            row.push(if (0..=n as isize).contains(&idx) {
                q[idx as usize].clone()
            } else {
                zero.clone()
            });
        }
        rows.push(row);
    }
    rows
}

/// The pair `(resultant(q, q'), first principal subresultant of (q, q'))`
/// of a degree-4 polynomial.  Both vanish exactly when `gcd(q, q')` has
/// degree at least two, i.e. when the root multiplicities `m_i` of `q`
/// satisfy `sum (m_i - 1) >= 2` — the doubled-contact condition screened
/// before square-root certification.  Degree below 4 is rejected; callers
/// re-span degenerate lines first.
pub fn subresultant_pair<C: Coeff>(q: &UniPoly<C>) -> Result<(C, C)> {
    if q.degree() != Some(4) {
        return Err(Error::InvalidPolynomial(format!(
            "subresultant_pair needs an exact degree-4 input, got degree {:?}",
            q.degree()
        )));
    }
    let dq = q.derivative();
    debug_assert_eq!(dq.degree(), Some(3));
    let s0 = bareiss_det(sylvester_submatrix(q.coeffs(), dq.coeffs(), 0, C::zero()));
    let s1 = bareiss_det(sylvester_submatrix(q.coeffs(), dq.coeffs(), 1, C::zero()));
    Ok((s0, s1))
}

/// Division-free determinant of a matrix of bivariate polynomials (subset
/// dynamic programming over rows; columns processed left to right).
pub(crate) fn det_bipoly<C: Coeff>(mat: &[Vec<BiPoly<C>>]) -> BiPoly<C> {
    let n = mat.len();
    assert!(n > 0 && n <= 16, "det_bipoly supports 1..=16 rows");
    let mut dp: Vec<Option<BiPoly<C>>> = vec![None; 1 << n];
    dp[0] = Some(BiPoly::constant(C::one()));
    for mask in 0..(1usize << n) {
        let Some(cur) = dp[mask].clone() else {
            continue;
        };
        if cur.is_zero() && mask != 0 {
            continue;
        }
        let col = mask.count_ones() as usize;
        if col == n {
            continue;
        }
        for r in 0..n {
            if mask & (1 << r) != 0 {
                continue;
            }
            if mat[r][col].is_zero() {
                continue;
            }
            let signed = if (mask >> (r + 1)).count_ones() % 2 == 0 {
                cur.mul(&mat[r][col])
            } else {
                cur.mul(&mat[r][col]).scale(&(-C::one()))
            };
            let slot = mask | (1 << r);
            dp[slot] = Some(match dp[slot].take() {
                None => signed,
                Some(acc) => acc.add(&signed),
            });
        }
    }
    dp[(1 << n) - 1].take().unwrap_or_else(BiPoly::zero)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{Rat, C64};
    use num_traits::Zero;

    fn rat(n: i64) -> Rat {
        Rat::from_integer(n.into())
    }

    fn rpoly(coeffs: &[i64]) -> UniPoly<Rat> {
        UniPoly::new(coeffs.iter().map(|&c| rat(c)).collect())
    }

    #[test]
    fn bareiss_matches_known_determinants() {
        let m = vec![
            vec![rat(2), rat(0), rat(1)],
            vec![rat(1), rat(3), rat(2)],
            vec![rat(0), rat(1), rat(4)],
        ];
        // det = 2*(12-2) - 0 + 1*(1-0) = 21
        assert_eq!(bareiss_det(m), rat(21));
        let singular = vec![vec![rat(1), rat(2)], vec![rat(2), rat(4)]];
        assert_eq!(bareiss_det(singular), rat(0));
    }

    #[test]
    fn resultant_of_coprime_pair_is_nonzero() {
        // q = (t-1)(t-2)(t-3)(t-4): squarefree, so res(q, q') != 0.
        let q = rpoly(&[24, -50, 35, -10, 1]);
        let (s0, _) = subresultant_pair(&q).unwrap();
        assert!(!s0.is_zero());
        // A single doubled root: t^2 (t-1)(t-2) -> s0 = 0, s1 != 0.
        let q = rpoly(&[0, 0, 2, -3, 1]);
        let (s0, s1) = subresultant_pair(&q).unwrap();
        assert!(s0.is_zero());
        assert!(!s1.is_zero());
    }

    #[test]
    fn doubled_structure_kills_both_subresultants() {
        // t^2 (t-1)^2: multiplicities (2, 2).
        let (s0, s1) = subresultant_pair(&rpoly(&[0, 0, 1, -2, 1])).unwrap();
        assert!(s0.is_zero() && s1.is_zero());
        // t^4: multiplicity 4.
        let (s0, s1) = subresultant_pair(&rpoly(&[0, 0, 0, 0, 1])).unwrap();
        assert!(s0.is_zero() && s1.is_zero());
        // t^3 (t-1): multiplicities (3, 1); sum of (m_i - 1) is 2, so both
        // vanish even though the root structure is not a perfect square —
        // exactly why certification must also extract a square root.
        let (s0, s1) = subresultant_pair(&rpoly(&[0, 0, 0, -1, 1])).unwrap();
        assert!(s0.is_zero() && s1.is_zero());
    }

    #[test]
    fn rejects_low_degree() {
        assert!(subresultant_pair(&rpoly(&[1, 2, 1])).is_err());
    }

    /// Oracle: the resultant of monic q and q' equals the product of q'(r_i)
    /// over the roots of q (here with known integer roots), times lc(q')^4...
    /// For monic q of degree 4 and q' of degree 3: res(q, q') = prod q'(r_i).
    #[test]
    fn resultant_matches_root_product_oracle() {
        let roots = [1i64, 2, 5, -3];
        // q = prod (t - r)
        let mut q = rpoly(&[1]);
        for r in roots {
            q = q.mul(&rpoly(&[-r, 1]));
        }
        let dq = q.derivative();
        let prod = roots
            .iter()
            .map(|&r| dq.eval(&rat(r)))
            .fold(rat(1), |a, b| a * b);
        let (s0, _) = subresultant_pair(&q).unwrap();
        assert_eq!(s0, prod);
    }

    #[test]
    fn bipoly_determinant_matches_scalar_expansion() {
        use crate::poly::bi::BiPoly;
        let x = BiPoly::from_terms([(1, 0, C64::new(1.0, 0.0))]);
        let y = BiPoly::from_terms([(0, 1, C64::new(1.0, 0.0))]);
        let one = BiPoly::constant(C64::new(1.0, 0.0));
        // det [[x, 1], [1, y]] = xy - 1
        let d = det_bipoly(&[vec![x.clone(), one.clone()], vec![one.clone(), y.clone()]]);
        let (u, v) = (C64::new(3.0, 0.5), C64::new(-2.0, 1.0));
        assert!((d.eval(&u, &v) - (u * v - C64::new(1.0, 0.0))).norm() < 1e-12);
    }
}
