//! Schubert calculus on the Grassmannian of lines in projective 3-space.
//!
//! Classes are integer combinations of the six-element basis
//! `{1; σ_l; σ_h, σ_p; σ_{l·h}; [pt]}`, graded by codimension
//! `0, 1, 2, 2, 3, 4`.  Here `σ_l` is the lines-meeting-a-line divisor,
//! `σ_h` the lines-in-a-plane class, `σ_p` the lines-through-a-point
//! class, `σ_{l·h}` their common product, and `[pt]` the class of a single
//! line.  Multiplication is table-driven; products that overflow the
//! dimension of the Grassmannian are zero.

use std::ops::{Add, Mul, Neg, Sub};

/// An integer Schubert class, stored by basis coefficients.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SchubertClass {
    /// Coefficient of the fundamental class.
    pub c_one: i64,
    /// Coefficient of `σ_l` (codimension 1).
    pub c_l: i64,
    /// Coefficient of `σ_h` (codimension 2).
    pub c_h: i64,
    /// Coefficient of `σ_p` (codimension 2).
    pub c_p: i64,
    /// Coefficient of `σ_{l·h}` (codimension 3).
    pub c_lh: i64,
    /// Coefficient of `[pt]` (codimension 4).
    pub c_pt: i64,
}

impl SchubertClass {
    pub fn zero() -> Self {
        SchubertClass::default()
    }

    pub fn one() -> Self {
        SchubertClass {
            c_one: 1,
            ..Default::default()
        }
    }

    pub fn sigma_l() -> Self {
        SchubertClass {
            c_l: 1,
            ..Default::default()
        }
    }

    pub fn sigma_h() -> Self {
        SchubertClass {
            c_h: 1,
            ..Default::default()
        }
    }

    pub fn sigma_p() -> Self {
        SchubertClass {
            c_p: 1,
            ..Default::default()
        }
    }

    pub fn sigma_lh() -> Self {
        SchubertClass {
            c_lh: 1,
            ..Default::default()
        }
    }

    pub fn point() -> Self {
        SchubertClass {
            c_pt: 1,
            ..Default::default()
        }
    }

    pub fn scale(self, n: i64) -> Self {
        SchubertClass {
            c_one: n * self.c_one,
            c_l: n * self.c_l,
            c_h: n * self.c_h,
            c_p: n * self.c_p,
            c_lh: n * self.c_lh,
            c_pt: n * self.c_pt,
        }
    }

    /// The codimension, when the class is homogeneous and nonzero.
    pub fn grade(&self) -> Option<usize> {
        let occupied: Vec<usize> = [
            (0, self.c_one),
            (1, self.c_l),
            (2, self.c_h),
            (2, self.c_p),
            (3, self.c_lh),
            (4, self.c_pt),
        ]
        .into_iter()
        .filter(|(_, c)| *c != 0)
        .map(|(g, _)| g)
        .collect();
        let first = *occupied.first()?;
        occupied.iter().all(|g| *g == first).then_some(first)
    }

    /// The degree map: the `[pt]` coefficient.
    pub fn degree(&self) -> i64 {
        self.c_pt
    }
}

impl Add for SchubertClass {
    type Output = SchubertClass;
    fn add(self, rhs: SchubertClass) -> SchubertClass {
        SchubertClass {
            c_one: self.c_one + rhs.c_one,
            c_l: self.c_l + rhs.c_l,
            c_h: self.c_h + rhs.c_h,
            c_p: self.c_p + rhs.c_p,
            c_lh: self.c_lh + rhs.c_lh,
            c_pt: self.c_pt + rhs.c_pt,
        }
    }
}

impl Sub for SchubertClass {
    type Output = SchubertClass;
    fn sub(self, rhs: SchubertClass) -> SchubertClass {
        self + rhs.neg()
    }
}

impl Neg for SchubertClass {
    type Output = SchubertClass;
    fn neg(self) -> SchubertClass {
        self.scale(-1)
    }
}

impl Mul for SchubertClass {
    type Output = SchubertClass;

    /// Table-driven product.  The table encodes `σ_l² = σ_h + σ_p`,
    /// `σ_l·σ_h = σ_l·σ_p = σ_{l·h}`, `σ_h² = σ_p² = σ_l·σ_{l·h} = [pt]`,
    /// `σ_h·σ_p = 0`; higher products vanish for dimension reasons.
    fn mul(self, rhs: SchubertClass) -> SchubertClass {
        let a = &self;
        let b = &rhs;
        let mut out = SchubertClass::zero();
        // Fundamental class acts as identity.
        out = out + rhs.scale(a.c_one) + self.scale(b.c_one);
        // Both c_one contributions double-count the constant term.
        out.c_one -= a.c_one * b.c_one;
        // σ_l · σ_l = σ_h + σ_p.
        out.c_h += a.c_l * b.c_l;
        out.c_p += a.c_l * b.c_l;
        // σ_l · (σ_h or σ_p) = σ_{l·h}.
        out.c_lh += a.c_l * (b.c_h + b.c_p) + b.c_l * (a.c_h + a.c_p);
        // σ_l · σ_{l·h} = [pt]; σ_h² = σ_p² = [pt]; σ_h·σ_p = 0.
        out.c_pt += a.c_l * b.c_lh + b.c_l * a.c_lh;
        out.c_pt += a.c_h * b.c_h + a.c_p * b.c_p;
        out
    }
}

/// Product of two classes (function form of the `*` operator).
pub fn schubert_mul(a: SchubertClass, b: SchubertClass) -> SchubertClass {
    a * b
}

/// Degree of a class: its `[pt]` coefficient.
pub fn schubert_degree(c: SchubertClass) -> i64 {
    c.degree()
}

/// The class of the bitangency surface inside the Grassmannian:
/// `12σ_p + 28σ_h`.
///
/// The coefficients are forced by the geometry: `σ_p`-coefficient 12 is the
/// number of bitangents through a general point (the fiber degree of the
/// bitangency projection) and `σ_h`-coefficient 28 is the number of
/// bitangents of a general plane quartic; together they give Plücker
/// degree `deg(σ_l² · [S]) = 12 + 28 = 40`.
pub fn class_of_s() -> SchubertClass {
    SchubertClass::sigma_p().scale(12) + SchubertClass::sigma_h().scale(28)
}
