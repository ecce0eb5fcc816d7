//! Homogeneous polynomials over prime fields.

mod field;
mod form;
mod monomial;
mod parse;

use thiserror::Error;

pub use field::{is_prime, PrimeField, ShoupMul, DEFAULT_PRIME, SECONDARY_PRIME};
pub use form::{HomogeneousForm, MAX_DIMENSION};
pub use monomial::{binomial, enumerate_monomials, Monomial, MonomialBasis};
pub use parse::{parse_form, parse_form_infer};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("syntax error at byte {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("form is not homogeneous: expected degree {expected}, found a term of degree {found}")]
    NotHomogeneous { expected: u32, found: u32 },
    #[error("variable x{index} at byte {position} is out of range for n = {n}")]
    VariableOutOfRange { index: usize, n: usize, position: usize },
    #[error("cannot differentiate a constant form")]
    DegreeZero,
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("forms live over different fields")]
    FieldMismatch,
    #[error("n = {0} exceeds the supported maximum {max}", max = MAX_DIMENSION)]
    DimensionTooLarge(usize),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("modulus {0} is not below 2^62")]
    ModulusTooLarge(u64),
}
