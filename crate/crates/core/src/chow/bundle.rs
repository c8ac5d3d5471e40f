//! Chow rings of the two rank-two projective bundles in the configuration.
//!
//! Both bundles live over a surface whose numerical Picard group is
//! generated by one divisor `D`, so a class is an integer combination of
//! the six-element basis `{1, D, pt; τ, D·τ, pt·τ}`, where `τ` is the
//! relative hyperplane class and `pt` the base point class.  The fiber
//! relation `τ² = c₁·τ − c₂` (with `c₁ = c·D` and `c₂ = e·pt` numerically)
//! reduces every product into the basis, and the degree of a top-degree
//! class is its `pt·τ` coefficient.
//!
//! Two instances matter here: [`pq_s`], the bundle of tangency duals over
//! the bitangency surface (relative class `R`, base divisor `π*H`), and
//! [`p_omega_x`], the projectivized cotangent bundle over the quartic
//! itself (relative class `T`, base divisor `ρ*h`).

use crate::error::{Error, Result};
use std::ops::{Add, Mul, Neg, Sub};

/// Reduction data of one projective bundle over a rank-one surface lattice.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BundleRing {
    /// Self-intersection of the base divisor generator (`D·D` in points).
    pub base_square: i64,
    /// First Chern class of the bundle as a multiple of `D`.
    pub c1_coeff: i64,
    /// Second Chern number of the bundle (coefficient of `pt`).
    pub c2_num: i64,
}

/// The bundle carrying the bitangency family: `τ = R`, base divisor
/// `π*H` with `H² = 40`, `c₁ = H`, `c₂ = 28` — fixed by the required
/// intersection numbers `R³ = 12` and `R²·π*H = 40`.
pub fn pq_s() -> BundleRing {
    BundleRing {
        base_square: 40,
        c1_coeff: 1,
        c2_num: 28,
    }
}

/// The projectivized cotangent bundle of the quartic: `τ = T`, base
/// divisor `ρ*h` with `h² = 4`, `c₁ = 0` and `c₂ = 24` (the cotangent
/// Chern data of a quartic surface), giving `T³ = −24`.
pub fn p_omega_x() -> BundleRing {
    BundleRing {
        base_square: 4,
        c1_coeff: 0,
        c2_num: 24,
    }
}

/// A class in the Chow ring of a projective bundle, by basis coefficients.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BundleClass {
    ring: BundleRing,
    /// Coefficients on `{1, D, pt, τ, D·τ, pt·τ}`.
    pub c_one: i64,
    pub c_d: i64,
    pub c_pt: i64,
    pub c_tau: i64,
    pub c_dtau: i64,
    pub c_pttau: i64,
}

impl BundleClass {
    pub fn zero(ring: BundleRing) -> Self {
        BundleClass {
            ring,
            c_one: 0,
            c_d: 0,
            c_pt: 0,
            c_tau: 0,
            c_dtau: 0,
            c_pttau: 0,
        }
    }

    pub fn one(ring: BundleRing) -> Self {
        BundleClass {
            c_one: 1,
            ..BundleClass::zero(ring)
        }
    }

    /// The relative hyperplane class `τ`.
    pub fn tau(ring: BundleRing) -> Self {
        BundleClass {
            c_tau: 1,
            ..BundleClass::zero(ring)
        }
    }

    /// The pulled-back base divisor `D`.
    pub fn base_divisor(ring: BundleRing) -> Self {
        BundleClass {
            c_d: 1,
            ..BundleClass::zero(ring)
        }
    }

    /// The pulled-back base point class.
    pub fn base_point(ring: BundleRing) -> Self {
        BundleClass {
            c_pt: 1,
            ..BundleClass::zero(ring)
        }
    }

    pub fn ring(&self) -> BundleRing {
        self.ring
    }

    pub fn scale(self, n: i64) -> Self {
        BundleClass {
            ring: self.ring,
            c_one: n * self.c_one,
            c_d: n * self.c_d,
            c_pt: n * self.c_pt,
            c_tau: n * self.c_tau,
            c_dtau: n * self.c_dtau,
            c_pttau: n * self.c_pttau,
        }
    }

    /// Degree of a top-dimensional class: the `pt·τ` coefficient.  (The
    /// pushforward of `pt·τ` to the base is one point.)
    pub fn degree(&self) -> i64 {
        self.c_pttau
    }

    /// The codimension, when the class is homogeneous and nonzero.
    pub fn grade(&self) -> Option<usize> {
        let occupied: Vec<usize> = [
            (0, self.c_one),
            (1, self.c_d),
            (1, self.c_tau),
            (2, self.c_pt),
            (2, self.c_dtau),
            (3, self.c_pttau),
        ]
        .into_iter()
        .filter(|(_, c)| *c != 0)
        .map(|(g, _)| g)
        .collect();
        let first = *occupied.first()?;
        occupied.iter().all(|g| *g == first).then_some(first)
    }
}

impl Add for BundleClass {
    type Output = BundleClass;
    fn add(self, rhs: BundleClass) -> BundleClass {
        assert_eq!(self.ring, rhs.ring, "classes from different bundles");
        BundleClass {
            ring: self.ring,
            c_one: self.c_one + rhs.c_one,
            c_d: self.c_d + rhs.c_d,
            c_pt: self.c_pt + rhs.c_pt,
            c_tau: self.c_tau + rhs.c_tau,
            c_dtau: self.c_dtau + rhs.c_dtau,
            c_pttau: self.c_pttau + rhs.c_pttau,
        }
    }
}

impl Sub for BundleClass {
    type Output = BundleClass;
    fn sub(self, rhs: BundleClass) -> BundleClass {
        self + rhs.neg()
    }
}

impl Neg for BundleClass {
    type Output = BundleClass;
    fn neg(self) -> BundleClass {
        self.scale(-1)
    }
}

impl Mul for BundleClass {
    type Output = BundleClass;

    /// Bilinear product reduced through `D² = base_square·pt`, `D·pt = 0`,
    /// and `τ² = c₁·τ − c₂ = c1_coeff·(D·τ) − c2_num·pt`.
    fn mul(self, rhs: BundleClass) -> BundleClass {
        assert_eq!(self.ring, rhs.ring, "classes from different bundles");
        let r = self.ring;
        let a = &self;
        let b = &rhs;
        let mut out = BundleClass::zero(r);
        // Identity part.
        out = out + rhs.scale(a.c_one) + self.scale(b.c_one);
        out.c_one -= a.c_one * b.c_one;
        // Base × base: D·D = base_square · pt.
        out.c_pt += r.base_square * a.c_d * b.c_d;
        // Base divisor × τ and τ × base divisor.
        out.c_dtau += a.c_d * b.c_tau + a.c_tau * b.c_d;
        // Base divisor × D·τ: D²·τ = base_square · pt·τ.
        out.c_pttau += r.base_square * (a.c_d * b.c_dtau + a.c_dtau * b.c_d);
        // Base point × τ.
        out.c_pttau += a.c_pt * b.c_tau + a.c_tau * b.c_pt;
        // τ × τ: apply the fiber relation once.
        let tt = a.c_tau * b.c_tau;
        out.c_dtau += r.c1_coeff * tt;
        out.c_pt -= r.c2_num * tt;
        // τ × D·τ: τ²·D = c1_coeff·D²·τ − c2_num·pt·D = c1_coeff·base_square·pt·τ.
        let tdt = a.c_tau * b.c_dtau + a.c_dtau * b.c_tau;
        out.c_pttau += r.c1_coeff * r.base_square * tdt;
        out
    }
}

/// Intersection number of `R^i · (π*H)^j` on the bitangency bundle; the
/// exponents must sum to three.
pub fn pq_number(r_pow: u32, h_pow: u32) -> Result<i64> {
    monomial_number(pq_s(), r_pow, h_pow)
}

/// Intersection number of `T^i · (ρ*h)^j` on the projectivized cotangent
/// bundle; the exponents must sum to three.
pub fn px_number(t_pow: u32, h_pow: u32) -> Result<i64> {
    monomial_number(p_omega_x(), t_pow, h_pow)
}

fn monomial_number(ring: BundleRing, tau_pow: u32, base_pow: u32) -> Result<i64> {
    if tau_pow + base_pow != 3 {
        return Err(Error::DimensionMismatch(format!(
            "bundle monomial must have total degree 3, got {}",
            tau_pow + base_pow
        )));
    }
    let mut acc = BundleClass::one(ring);
    for _ in 0..tau_pow {
        acc = acc * BundleClass::tau(ring);
    }
    for _ in 0..base_pow {
        acc = acc * BundleClass::base_divisor(ring);
    }
    Ok(acc.degree())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn the_bitangency_bundle_has_the_quoted_numbers() {
        assert_eq!(pq_number(3, 0).unwrap(), 12);
        assert_eq!(pq_number(2, 1).unwrap(), 40);
        assert_eq!(pq_number(1, 2).unwrap(), 40);
        assert_eq!(pq_number(0, 3).unwrap(), 0);
    }

    #[test]
    fn the_cotangent_bundle_has_the_quoted_numbers() {
        assert_eq!(px_number(0, 3).unwrap(), 0);
        assert_eq!(px_number(1, 2).unwrap(), 4);
        assert_eq!(px_number(2, 1).unwrap(), 0);
        assert_eq!(px_number(3, 0).unwrap(), -24);
    }

    #[test]
    fn wrong_grade_is_rejected() {
        assert!(pq_number(2, 2).is_err());
        assert!(px_number(1, 1).is_err());
    }

    #[test]
    fn the_branch_pushforward_composite_is_eighty() {
        // (6T + 8ρ*h) · ρ*h · (T + 2ρ*h) = 6T²ρ*h + 20T(ρ*h)² + 16(ρ*h)³.
        let r = p_omega_x();
        let t = BundleClass::tau(r);
        let h = BundleClass::base_divisor(r);
        let product = (t.scale(6) + h.scale(8)) * h * (t + h.scale(2));
        assert_eq!(product.degree(), 80);
    }

    fn small_class(ring: BundleRing) -> impl Strategy<Value = BundleClass> {
        (
            -5i64..=5,
            -5i64..=5,
            -5i64..=5,
            -5i64..=5,
            -5i64..=5,
            -5i64..=5,
        )
            .prop_map(move |(c_one, c_d, c_pt, c_tau, c_dtau, c_pttau)| BundleClass {
                ring,
                c_one,
                c_d,
                c_pt,
                c_tau,
                c_dtau,
                c_pttau,
            })
    }

    proptest! {
        /// Associativity means the fiber relation is confluent: reducing
        /// `τ·τ` first or last yields the same basis form.
        #[test]
        fn reduction_is_confluent_on_pq(
            a in small_class(pq_s()),
            b in small_class(pq_s()),
            c in small_class(pq_s()),
        ) {
            prop_assert_eq!((a * b) * c, a * (b * c));
            prop_assert_eq!(a * b, b * a);
        }

        #[test]
        fn reduction_is_confluent_on_p_omega(
            a in small_class(p_omega_x()),
            b in small_class(p_omega_x()),
            c in small_class(p_omega_x()),
        ) {
            prop_assert_eq!((a * b) * c, a * (b * c));
            prop_assert_eq!(a * b, b * a);
        }
    }
}
