//! Computation of the complete subfield lattice of a number field
//! K = Q[x]/(f) for irreducible f over Z.
//!
//! The pipeline factors f over K into a subfield factorization, derives one
//! partition of the factor indices per principal subfield with modular linear
//! algebra, and closes the partition set under joins. All arithmetic is
//! exact.

pub mod arith;
pub mod factor;
pub mod lattice;
pub mod modgcd;
pub mod numfield;
pub mod partition;
pub mod principal;
pub mod error;

pub use error::{Error, Result};
