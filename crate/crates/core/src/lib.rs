//! Logarithmic differential forms along equidimensional subspace
//! arrangements, and a computational check of a Solomon-Terao type
//! formula for their characteristic polynomials.

pub mod arrangement;
pub mod ci;
pub mod error;
pub mod groebner;
pub mod logforms;
pub mod poly;
pub mod resolution;
pub mod verify;

pub use error::{Error, Result};
