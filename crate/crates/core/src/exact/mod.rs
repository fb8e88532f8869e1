//! Exact scalar and Laurent-polynomial arithmetic.

pub mod interp;
pub mod laurent;
pub mod linalg;
pub mod matrix;
pub mod rat;

pub use interp::{interpolate_consecutive, Interpolator};
pub use laurent::{laurent_derivative, laurent_parse, LaurentParseError, LaurentPoly};
pub use linalg::RatMatrix;
pub use matrix::{unit_inverse, LaurentMatrix, MatrixError};
pub use rat::Rat;
