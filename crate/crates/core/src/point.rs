//! Projective points with deterministic normalization.

use crate::error::{Error, Result};
use crate::scalar::{Coeff, Rat, C64};
use num_integer::Integer;
use num_traits::{Signed, Zero};

/// A point of projective space, stored as a coordinate vector of length
/// `dim + 1` (3 for the plane, 4 for space).
///
/// Coordinates are kept in a canonical normalization so that points can be
/// compared, hashed into reports, and serialized deterministically:
/// * float mode — the coordinate of largest modulus is scaled to exactly `1`;
/// * exact mode — denominators are cleared, the gcd of the numerators is
///   divided out, and the first nonzero coordinate is made positive.
#[derive(Debug, Clone, PartialEq)]
pub struct ProjPoint<C: Coeff> {
    coords: Vec<C>,
}

impl<C: Coeff> ProjPoint<C> {
    /// Build a point from homogeneous coordinates; rejects the zero vector.
    pub fn new(coords: Vec<C>) -> Result<Self> {
        if coords.len() < 2 {
            return Err(Error::DimensionMismatch(format!(
                "projective point needs >= 2 coordinates, got {}",
                coords.len()
            )));
        }
        if coords.iter().all(|c| c.is_zero()) {
            return Err(Error::InvalidPolynomial(
                "zero vector is not a projective point".into(),
            ));
        }
        Ok(ProjPoint { coords })
    }

    /// Normalized homogeneous coordinates.
    pub fn coords(&self) -> &[C] {
        &self.coords
    }

    /// Number of homogeneous coordinates (projective dimension + 1).
    pub fn ncoords(&self) -> usize {
        self.coords.len()
    }
}

impl ProjPoint<C64> {
    /// Construct from real coordinates.
    pub fn from_reals(reals: &[f64]) -> Result<Self> {
        Self::new(
            reals
                .iter()
                .map(|&r| C64::new(r, 0.0))
                .map(normalize_tiny)
                .collect(),
        )
        .map(|p| p.normalized())
    }

    /// Scale so the largest-modulus coordinate is exactly `1`.
    pub fn normalized(&self) -> Self {
        let (idx, _) = self
            .coords
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.norm().total_cmp(&b.1.norm()))
            .expect("nonempty");
        let pivot = self.coords[idx];
        let coords = self
            .coords
            .iter()
            .map(|c| normalize_tiny(c / pivot))
            .collect();
        ProjPoint { coords }
    }

    /// Sine of the Fubini-Study angle between two points; zero iff equal in
    /// projective space, and invariant under rescaling of either argument.
    pub fn proj_distance(&self, other: &Self) -> f64 {
        assert_eq!(self.ncoords(), other.ncoords(), "dimension mismatch");
        let dot: C64 = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a * b.conj())
            .sum();
        let na: f64 = self.coords.iter().map(|c| c.norm_sqr()).sum();
        let nb: f64 = other.coords.iter().map(|c| c.norm_sqr()).sum();
        let cos2 = (dot.norm_sqr() / (na * nb)).min(1.0);
        (1.0 - cos2).max(0.0).sqrt()
    }

    /// Largest imaginary part relative to the coordinate scale; near zero for
    /// points that are real up to phase.
    pub fn imaginary_defect(&self) -> f64 {
        let p = self.normalized();
        let scale = p.coords.iter().map(|c| c.norm()).fold(0.0, f64::max);
        p.coords.iter().map(|c| c.im.abs()).fold(0.0, f64::max) / scale.max(1e-300)
    }

    /// Deterministic ordering key: lexicographic on (re, im) pairs of the
    /// normalized coordinates.
    pub fn sort_key(&self) -> Vec<(f64, f64)> {
        self.normalized()
            .coords
            .iter()
            .map(|c| (c.re, c.im))
            .collect()
    }
}

/// Flush denormal dust (|x| < 1e-300) to exact zero so normalized points
/// print cleanly.
fn normalize_tiny(c: C64) -> C64 {
    let re = if c.re.abs() < 1e-300 { 0.0 } else { c.re };
    let im = if c.im.abs() < 1e-300 { 0.0 } else { c.im };
    C64::new(re, im)
}

impl ProjPoint<Rat> {
    /// Clear denominators, divide by the numerator gcd, and fix the sign of
    /// the first nonzero coordinate; the result is the unique primitive
    /// integer representative.
    pub fn normalized(&self) -> Self {
        let mut lcm = num_bigint::BigInt::from(1);
        for c in &self.coords {
            lcm = lcm.lcm(c.denom());
        }
        let mut ints: Vec<num_bigint::BigInt> = self
            .coords
            .iter()
            .map(|c| c.numer() * (&lcm / c.denom()))
            .collect();
        let mut gcd = num_bigint::BigInt::zero();
        for v in &ints {
            gcd = gcd.gcd(v);
        }
        if !gcd.is_zero() {
            for v in &mut ints {
                *v /= &gcd;
            }
        }
        if let Some(first) = ints.iter().find(|v| !v.is_zero()) {
            if first.is_negative() {
                for v in &mut ints {
                    *v = -v.clone();
                }
            }
        }
        ProjPoint {
            coords: ints.into_iter().map(Rat::from_integer).collect(),
        }
    }

    /// Lossy conversion to float mode.
    pub fn to_c64(&self) -> ProjPoint<C64> {
        ProjPoint {
            coords: self.coords.iter().map(Coeff::to_c64).collect(),
        }
        .normalized()
    }
}
