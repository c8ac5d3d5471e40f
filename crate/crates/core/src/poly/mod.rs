//! Polynomial types: sparse homogeneous forms, dense univariate polynomials,
//! and sparse affine bivariate polynomials, plus the determinant machinery
//! for resultants and subresultants.

mod bi;
mod det;
mod multi;
mod uni;

pub use bi::BiPoly;
pub(crate) use det::det_bipoly;
pub use det::{bareiss_det, subresultant_pair, sylvester_submatrix};
pub use multi::MultiPoly;
pub use uni::UniPoly;
