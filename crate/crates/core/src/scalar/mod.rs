//! Exact arithmetic for the commutative scalar symbols: Gaussian rationals,
//! polynomial fractions in (m, D0..D3), and the quadratic extension by `w`.

pub mod field;
pub mod gaussian;
pub mod poly;
pub mod rat;
pub mod ratfn;

pub use field::{omega_square, FieldElem, Sample};
pub use gaussian::Gaussian;
pub use poly::{binomial, Mono, Poly, NVARS, VAR_D, VAR_M, VAR_NAMES};
pub use rat::Rat;
pub use ratfn::RatFn;
