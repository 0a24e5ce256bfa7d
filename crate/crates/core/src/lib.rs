pub mod bgg;
pub mod dg;
pub mod error;
pub mod ext;
pub mod field;
pub mod groebner;
pub mod harness;
pub mod ideal;
pub mod json;
pub mod matrix;
pub mod module;
pub mod pgroup;
pub mod random;
pub mod resolution;
pub mod support;
pub mod poly;

pub use error::{Error, Result};
pub use field::Field;
pub use matrix::{Matrix, RowSpace};
