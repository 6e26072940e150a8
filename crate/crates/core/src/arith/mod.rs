//! Exact arithmetic substrate: machine-word prime fields, dense polynomials
//! over F_p, Z and Q, Chinese remaindering with rational reconstruction, and
//! the quotient ring F_p[t]/(m).

pub mod crt;
pub mod fp;
pub(crate) mod karatsuba;
pub mod fp_poly;
pub mod q_poly;
pub mod quotient;
pub mod z_poly;

pub use crt::{crt_combine, rational_reconstruct};
pub use fp_poly::FpPoly;
pub use q_poly::QPoly;
pub use quotient::{QuotientRing, RPoly};
pub use z_poly::{zpoly_gcd, ZPoly};
