//! Exact computation with cellular sheaves and cosheaves on finite cell complexes.

pub mod barcode;
pub mod chain;
pub mod complex;
pub mod complexes;
pub mod derived;
pub mod diagram;
pub mod error;
pub mod field;
pub mod functors;
pub mod homology;
pub mod io;
pub mod linalg;
pub mod maps;
pub mod matrix;
pub mod netcode;
pub mod pairing;
pub mod persistence;
pub mod poset;
pub mod sensing;
pub mod sheaf;

pub use error::{Error, Result};
pub use field::{Field, Scalar};
pub use matrix::Matrix;
