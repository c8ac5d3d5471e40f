//! Rank-one numerical divisor lattices with adjunction.
//!
//! Both surfaces in play have numerical Picard rank one for the purposes
//! of the ledger: the quartic `X` with hyperplane class `h` (`h² = 4`,
//! trivial canonical class) and the bitangency surface `S` with its
//! Plücker polarization `H` (`H² = 40`, `K ≡ 3H` up to a 2-torsion class
//! `σ`).  Divisor classes carry the torsion symbol formally — it doubles
//! to zero and never contributes to an intersection number — so canonical
//! bookkeeping like the double-cover formula stays exact at the level of
//! classes, not just numbers.

use crate::error::{Error, Result};
use std::ops::{Add, Mul, Neg, Sub};

/// A rank-one lattice: generator self-intersection and canonical class.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DivisorLattice {
    /// Display name of the lattice.
    pub name: &'static str,
    /// Self-intersection of the generator.
    pub gen_square: i64,
    /// Canonical class in the lattice.
    pub canonical: DivisorClass,
}

/// An element `n·G + ε·σ` of a rank-one lattice with a formal 2-torsion
/// summand; `σ` satisfies `2σ = 0` and pairs to zero with everything.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DivisorClass {
    /// Multiple of the lattice generator.
    pub coeff: i64,
    /// Whether the formal torsion symbol is present.
    pub torsion: bool,
}

impl DivisorClass {
    pub fn new(coeff: i64) -> Self {
        DivisorClass {
            coeff,
            torsion: false,
        }
    }

    /// The torsion symbol itself.
    pub fn sigma() -> Self {
        DivisorClass {
            coeff: 0,
            torsion: true,
        }
    }

    pub fn with_torsion(coeff: i64) -> Self {
        DivisorClass {
            coeff,
            torsion: true,
        }
    }
}

impl Add for DivisorClass {
    type Output = DivisorClass;
    fn add(self, rhs: DivisorClass) -> DivisorClass {
        DivisorClass {
            coeff: self.coeff + rhs.coeff,
            // 2σ = 0: the symbol adds modulo two.
            torsion: self.torsion ^ rhs.torsion,
        }
    }
}

impl Sub for DivisorClass {
    type Output = DivisorClass;
    fn sub(self, rhs: DivisorClass) -> DivisorClass {
        // −σ = σ in a 2-torsion group.
        self + rhs
    }
}

impl Neg for DivisorClass {
    type Output = DivisorClass;
    fn neg(self) -> DivisorClass {
        DivisorClass {
            coeff: -self.coeff,
            torsion: self.torsion,
        }
    }
}

impl Mul<i64> for DivisorClass {
    type Output = DivisorClass;
    fn mul(self, n: i64) -> DivisorClass {
        DivisorClass {
            coeff: n * self.coeff,
            torsion: self.torsion && (n % 2 != 0),
        }
    }
}

/// The quartic surface lattice: `Pic(X) = Z·h`, `h² = 4`, trivial
/// canonical class.
pub fn pic_x() -> DivisorLattice {
    DivisorLattice {
        name: "Pic(X)",
        gen_square: 4,
        canonical: DivisorClass::new(0),
    }
}

/// The bitangency surface lattice: `Num(S) = Z·H`, `H² = 40`,
/// `K = 3H + σ`.
pub fn num_pic_s() -> DivisorLattice {
    DivisorLattice {
        name: "Num(S)",
        gen_square: 40,
        canonical: DivisorClass::with_torsion(3),
    }
}

impl DivisorLattice {
    /// Numerical intersection pairing; the torsion symbol pairs to zero.
    pub fn pair(&self, a: DivisorClass, b: DivisorClass) -> i64 {
        self.gen_square * a.coeff * b.coeff
    }
}

/// Arithmetic genus by adjunction: `p_a = 1 + D·(D + K)/2`.
///
/// A non-even pairing is reported as an error — on these lattices
/// `D·(D + K)` is always even, so parity failure signals a wrong lattice
/// constant rather than a legitimate input.
pub fn adjunction_genus(lattice: &DivisorLattice, d: DivisorClass) -> Result<i64> {
    let twice = lattice.pair(d, d + lattice.canonical);
    if twice % 2 != 0 {
        return Err(Error::Degenerate(format!(
            "adjunction pairing {} on {} is odd",
            twice, lattice.name
        )));
    }
    Ok(1 + twice / 2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn torsion_is_two_torsion() {
        let s = DivisorClass::sigma();
        assert_eq!(s + s, DivisorClass::new(0));
        assert_eq!(s * 2, DivisorClass::new(0));
        assert_eq!(s * 3, s);
        assert_eq!(-s, s);
    }

    #[test]
    fn torsion_never_pairs() {
        let s = num_pic_s();
        let h = DivisorClass::new(1);
        assert_eq!(s.pair(h, DivisorClass::sigma()), 0);
        assert_eq!(s.pair(h + DivisorClass::sigma(), h), s.pair(h, h));
    }

    #[test]
    fn the_paper_genera_come_out_of_adjunction() {
        let x = pic_x();
        let s = num_pic_s();
        assert_eq!(adjunction_genus(&x, DivisorClass::new(8)).unwrap(), 129);
        assert_eq!(adjunction_genus(&x, DivisorClass::new(20)).unwrap(), 801);
        assert_eq!(adjunction_genus(&s, DivisorClass::new(4)).unwrap(), 561);
        // Branch-curve consistency datum: |2H| on S.
        assert_eq!(adjunction_genus(&s, DivisorClass::new(2)).unwrap(), 201);
    }

    proptest! {
        #[test]
        fn adjunction_matches_the_closed_form(n in -30i64..=30) {
            let x = pic_x();
            let d = DivisorClass::new(n);
            // On X: p_a = 1 + 4n²/2 = 1 + 2n².
            prop_assert_eq!(adjunction_genus(&x, d).unwrap(), 1 + 2 * n * n);
            let s = num_pic_s();
            // On S: p_a = 1 + 40·n(n+3)/2 = 1 + 20n(n+3).
            prop_assert_eq!(
                adjunction_genus(&s, d).unwrap(),
                1 + 20 * n * (n + 3)
            );
        }

        #[test]
        fn torsion_addition_is_a_group_law(
            a in -10i64..=10, at in any::<bool>(),
            b in -10i64..=10, bt in any::<bool>(),
        ) {
            let x = DivisorClass { coeff: a, torsion: at };
            let y = DivisorClass { coeff: b, torsion: bt };
            prop_assert_eq!(x + y, y + x);
            prop_assert_eq!((x + y) - y, x);
        }
    }
}
