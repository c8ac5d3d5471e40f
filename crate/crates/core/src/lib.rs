//! Projective differential geometry of smooth quartic surfaces in 3-space.
//!
//! The crate computes, certifies, and cross-checks the classical tangency
//! geometry of a smooth quartic surface `X = V(F)`:
//!
//! * restriction of `F` to lines and planes, tangent sections, and the
//!   classification of their singularities (`poly`, `singularities`);
//! * the surface point classes induced by the Gauss map — general, parabolic,
//!   double-tangency, swallowtail, triple — via the tangent-section decision
//!   table (`geometry`);
//! * the bitangent lines of `X`: certified contact pairs, the twelve-line
//!   fiber through a generic point, smoothness of the bitangent family, and
//!   the ramification of the point-on-line projection (`bitangent`);
//! * pairs of points sharing a tangent plane (double points of the Gauss
//!   map), the ruled surface they sweep, and numerical continuation along
//!   their curve (`double_points`);
//! * an exact integer ledger that reproduces the enumerative invariants of
//!   the whole configuration from intersection theory alone (`chow`).
//!
//! Arithmetic runs in two modes (see [`scalar`]): exact rationals for
//! structural identities and complex doubles for every solver.  All float
//! tolerances are pinned in [`tol`].

pub mod bitangent;
pub mod bivar;
pub mod chow;
pub mod double_points;
pub mod error;
pub mod geometry;
pub mod pluecker;
pub mod point;
pub mod poly;
pub mod roots;
pub mod scalar;
pub mod singularities;
pub mod surface;
pub mod tol;

pub use error::{Error, Result};
pub use point::ProjPoint;
pub use poly::{BiPoly, MultiPoly, UniPoly};
pub use scalar::{Coeff, Rat, C64};
pub use tol::Tolerances;
