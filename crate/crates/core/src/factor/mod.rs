//! Factorization stack: univariate factorization over F_p, Hensel lifting,
//! Zassenhaus recombination over Z, Trager's norm method over K, and the
//! subfield-factorization wrapper.

pub mod finite;
pub mod hensel;
pub mod integers;
pub mod trager;

pub use finite::factor_mod_p;
pub use hensel::hensel_lift;
pub use integers::{factor_over_z, is_irreducible};
pub use trager::{subfield_factorization, trager_factor_over_k, SubfieldFactorization};
