//! Concrete algebras: dense real matrices at double or double-double
//! precision, and finite-dimensional Lie algebras given by structure
//! constants with polynomial coefficients.

mod collapse;
mod families;
mod matrix;
mod scalar;
mod structconst;

pub use collapse::{collapse_middle, CollapsedMiddle};
pub use families::{frechet_pair, random_matrix};
pub use matrix::{expm, norm2, Matrix, MatrixAlgebra, MatrixError};
pub use scalar::{Precision, Real};
pub use structconst::{
    example1_algebra, example2_algebra, sc_bracket, sc_validate, ScAlgebra, ScElement, ScError,
    ScViolation, EXAMPLE1_TEXT, EXAMPLE2_TEXT,
};
