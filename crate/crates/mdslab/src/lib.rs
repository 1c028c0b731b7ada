//! Construction and analysis of MDS and near-MDS evaluation codes over small
//! finite fields: GRS-family constructions, exact covering radii and deep
//! holes via syndrome tables, analytic deep-hole criteria, deep-hole-driven
//! code extensions, and desk-scale monomial-equivalence testing.
//!
//! Everything is exact: fields are represented by lookup tables or modular
//! arithmetic, and every advertised property is backed by a brute-force
//! oracle at the scales the guards allow.

pub mod code;
pub mod comb;
pub mod constructions;
pub mod covering;
pub mod criteria;
pub mod equiv;
pub mod error;
pub mod extend;
pub mod field;
pub mod io;
pub mod matrix;
pub mod reproduce;

pub use code::{CodeClass, CodeTag, LinearCode};
pub use comb::for_each_combination as comb_for_each;
pub use constructions::EvalConfig;
pub use error::{Error, Result};
pub use field::{Fe, Field, Poly};
pub use matrix::Matrix;
