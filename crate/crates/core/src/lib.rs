//! (1 - z)-descent, root numbers and L-values for the Jacobians of the
//! genus two curves y^2 = x^5 + A, with z a primitive fifth root of unity.

pub mod arith;
pub mod cyclotomic;
pub mod error;
pub mod f5linalg;
pub mod localization;
pub mod lseries;
pub mod rootnumber;
pub mod selmer;

pub use error::{Error, Result};
