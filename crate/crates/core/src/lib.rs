pub mod algebra;
pub mod catalog;
pub mod error;
pub mod hopf;
pub mod io;
pub mod linalg;
pub mod nonuple;
pub mod oqa;
pub mod report;
pub mod scalar;
pub mod tensor;

pub use error::{Error, Result};
pub use scalar::{parse_scalar, Assignment, Rational, Scalar};
