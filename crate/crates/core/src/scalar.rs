//! Coefficient fields for the two arithmetic modes.
//!
//! Everything algebraic in this crate is generic over [`Coeff`], with exactly
//! two instantiations:
//!
//! * [`Rat`] (`num_rational::BigRational`) — exact mode.  Used for structural
//!   identities (Euler, homogeneity, resultant certificates) and for surfaces
//!   with integer coefficients.
//! * [`C64`] (`num_complex::Complex64`) — float mode.  All solvers work over
//!   the complex numbers: tangency, double-point, and bitangent counts are
//!   counts of complex solutions, and insisting on real arithmetic would make
//!   them seed-dependent.
//!
//! The trait is deliberately small: ring/field ops via the std operator
//! bounds, plus the handful of conversions the numeric layer needs.

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// Exact rational scalar (arbitrary precision).
pub type Rat = BigRational;

/// Complex double-precision scalar.
pub type C64 = Complex64;

/// A field of coefficients usable by the polynomial layer.
pub trait Coeff:
    Clone
    + Debug
    + PartialEq
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
{
    /// True when arithmetic is exact (no tolerances needed for zero tests).
    const EXACT: bool;

    /// Embed a small integer.
    fn from_i64(n: i64) -> Self;

    /// Absolute value / modulus as an `f64` (used for pivoting and scaling).
    fn magnitude(&self) -> f64;

    /// Lossy conversion to a complex double (exact coefficients round).
    fn to_c64(&self) -> C64;
}

impl Coeff for Rat {
    const EXACT: bool = true;

    fn from_i64(n: i64) -> Self {
        Rat::from_integer(n.into())
    }

    fn magnitude(&self) -> f64 {
        self.to_f64().map(f64::abs).unwrap_or(f64::INFINITY)
    }

    fn to_c64(&self) -> C64 {
        C64::new(self.to_f64().unwrap_or(f64::NAN), 0.0)
    }
}

impl Coeff for C64 {
    const EXACT: bool = false;

    fn from_i64(n: i64) -> Self {
        C64::new(n as f64, 0.0)
    }

    fn magnitude(&self) -> f64 {
        self.norm()
    }

    fn to_c64(&self) -> C64 {
        *self
    }
}

/// Parse a decimal integer string into a `Rat` numerator/denominator pair.
pub fn rat_from_strings(num: &str, den: &str) -> Option<Rat> {
    let n: num_bigint::BigInt = num.parse().ok()?;
    let d: num_bigint::BigInt = den.parse().ok()?;
    if d.is_zero() {
        return None;
    }
    Some(Rat::new(n, d))
}
