//! Exact rational and Gaussian-rational arithmetic, generic matrix kernels,
//! structural validation and the number theory behind the regularity tests.

pub mod field;
pub mod matrix;
pub mod primes;
pub mod rational;
pub mod scalar;
pub mod unitary;
pub mod validate;

pub use field::{Field, GaussianRational, RealField};
pub use matrix::Matrix;
pub use num_complex::Complex64;
pub use num_rational::BigRational;
pub use primes::{
    logs_rationally_equivalent, logs_same_sign, prime_exponents, PrimeExponentVector,
    DEFAULT_TRIAL_BOUND,
};
pub use scalar::{DynMatrix, Scalar};
pub use unitary::complete_to_unitary;
pub use validate::{validate_matrix, MatrixProperty, Violation};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactMathError {
    #[error("cannot parse number `{0}`")]
    Parse(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("{0} has a prime factor above the trial-division bound {1}")]
    FactorBound(String, u64),
    #[error("cannot combine exact and approximate scalars without an explicit conversion")]
    MixedScalars,
    #[error("division by zero")]
    DivisionByZero,
    #[error("unknown matrix property `{0}`")]
    UnknownProperty(String),
}
