//! Exact scalars: half-integers, rational functions in `p` and `h`, truncated series.

mod gcd;
mod halfint;
mod parse;
mod poly;
mod rational;
mod series;
mod upoly;

pub use gcd::gcd;
pub use halfint::HalfInt;
pub use poly::{Mono, Poly, Var};
pub use rational::Scalar;
pub use series::PowerSeries;
pub use upoly::UPoly;
