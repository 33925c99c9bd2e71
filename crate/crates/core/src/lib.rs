//! Exact representation theory for the Jordanian quantum algebras
//! `U_h(sl(2))` and `U_h(su(1,1))`.

pub mod arith;
pub mod cg;
pub mod check;
pub mod coproduct;
pub mod driver;
pub mod error;
pub mod io;
pub mod sl2;
pub mod su11;

pub use error::{Error, Result};
