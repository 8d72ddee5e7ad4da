//! Exact and interval arithmetic: rationals, polynomials, transfer functions.

mod interval;
mod interval_poly;
mod poly;
mod rational;
mod transfer;

pub use interval::Interval;
pub use interval_poly::IntervalPoly;
pub use poly::Poly;
pub(crate) use poly::{gcd_degree_mod, PRIMES};
pub use rational::Rational;
pub use transfer::{reduce, Domain, TransferFunction};
