//! Exact-integer intersection theory for the tangency geometry of a smooth
//! quartic surface.
//!
//! Everything here is symbolic: the Chow ring of the Grassmannian of lines
//! ([`schubert`]), the Chow rings of the two projective bundles carrying
//! the bitangency family and the branch analysis ([`bundle`]), rank-one
//! divisor lattices with adjunction ([`lattice`]), and the ledger that
//! re-derives every enumerative constant of the configuration and checks
//! them against each other ([`ledger`]).  No floats enter any computation
//! in this module; all arithmetic is `i64`.

pub mod bundle;
pub mod lattice;
pub mod ledger;
pub mod schubert;

pub use bundle::{p_omega_x, pq_number, pq_s, px_number, BundleClass, BundleRing};
pub use lattice::{adjunction_genus, num_pic_s, pic_x, DivisorClass, DivisorLattice};
pub use ledger::{run_ledger, run_ledger_with, LedgerConstants, LedgerReport, LedgerRow};
pub use schubert::{class_of_s, schubert_degree, schubert_mul, SchubertClass};
