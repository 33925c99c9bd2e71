//! Exact arithmetic: rationals, half-integers, binomials, polynomials in
//! `h` and matrices over them.

pub mod binomial;
pub mod elim;
pub mod halfint;
pub mod matrix;
pub mod poly;
pub mod rational;
pub mod series;

pub use binomial::{falling_binomial, gen_binomial};
pub use halfint::HalfInt;
pub use matrix::HMatrix;
pub use poly::HPoly;
pub use rational::{format_rational, int, parse_rational, rat, Rational};
