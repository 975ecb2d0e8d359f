pub mod error;
pub mod generators;
pub mod index_set;
pub mod io;
pub mod kernels;
pub mod matrix;
pub mod pmp;
pub mod strata;
pub mod scalar;

pub use error::{Error, Result};
pub use index_set::IndexSet;
pub use matrix::{HermitianMatrix, KernelBasis, Matrix, RectMatrix, Signature};
pub use scalar::{ComplexFloat, Domain, Field, GaussianRational, Gf, PrimeModulus, Rational, Scalar, StarField, Tolerance};
