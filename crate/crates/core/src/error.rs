use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;

use crate::arith::Rational;

/// Errors raised anywhere in the crate.
///
/// [`Error::code`] gives a stable machine-readable tag for each variant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    ZeroInput(&'static str),
    NotPrime(BigInt),
    NotOddPrime(BigInt),
    NoSquareRoot { a: BigInt, p: BigInt },
    BoundExhausted(&'static str),
    InvalidDimension(usize),
    DimensionMismatch { expected: usize, found: usize },
    IdentityViolated,
    /// Basis indices are 1-based, as in the multiplication table notation.
    AssociativityViolated { i: usize, j: usize, k: usize },
    NoStandardInvolution,
    SingularNorm { radical: Vec<Vec<Rational>> },
    NotIntegral(&'static str),
    SingularMatrix,
    NotZeroDivisor,
    DegenerateInput(&'static str),
    NotAnOrder(&'static str),
    DiscriminantNotSquare(BigInt),
    Precondition(String),
    Internal(String),
}

impl Error {
    pub fn code(&self) -> &'static str {
        match self {
            Error::ZeroInput(_) => "zero_input",
            Error::NotPrime(_) => "not_prime",
            Error::NotOddPrime(_) => "not_odd_prime",
            Error::NoSquareRoot { .. } => "no_square_root",
            Error::BoundExhausted(_) => "bound_exhausted",
            Error::InvalidDimension(_) => "invalid_dimension",
            Error::DimensionMismatch { .. } => "dimension_mismatch",
            Error::IdentityViolated => "identity_violated",
            Error::AssociativityViolated { .. } => "associativity_violated",
            Error::NoStandardInvolution => "no_standard_involution",
            Error::SingularNorm { .. } => "singular_norm",
            Error::NotIntegral(_) => "not_integral",
            Error::SingularMatrix => "singular_matrix",
            Error::NotZeroDivisor => "not_zero_divisor",
            Error::DegenerateInput(_) => "degenerate_input",
            Error::NotAnOrder(_) => "not_an_order",
            Error::DiscriminantNotSquare(_) => "discriminant_not_square",
            Error::Precondition(_) => "precondition",
            Error::Internal(_) => "internal",
        }
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::ZeroInput(what) => write!(f, "{what} must be nonzero"),
            Error::NotPrime(n) => write!(f, "{n} is not prime"),
            Error::NotOddPrime(n) => write!(f, "{n} is not an odd prime"),
            Error::NoSquareRoot { a, p } => write!(f, "no square root of {a} modulo {p}"),
            Error::BoundExhausted(what) => write!(f, "search budget exhausted: {what}"),
            Error::InvalidDimension(n) => write!(f, "unsupported dimension {n}"),
            Error::DimensionMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected {expected}, found {found}")
            }
            Error::IdentityViolated => write!(f, "first basis element is not a two-sided identity"),
            Error::AssociativityViolated { i, j, k } => {
                write!(f, "associativity violated at ({i},{j},{k})")
            }
            Error::NoStandardInvolution => write!(f, "algebra has no standard involution"),
            Error::SingularNorm { radical } => {
                write!(f, "reduced norm is singular (radical of dimension {})", radical.len())
            }
            Error::NotIntegral(what) => write!(f, "not integral: {what}"),
            Error::SingularMatrix => write!(f, "matrix is singular"),
            Error::NotZeroDivisor => write!(f, "element is not a zerodivisor"),
            Error::DegenerateInput(what) => write!(f, "degenerate input: {what}"),
            Error::NotAnOrder(what) => write!(f, "not an order: {what}"),
            Error::DiscriminantNotSquare(d) => write!(f, "discriminant {d} is not a perfect square"),
            Error::Precondition(msg) => write!(f, "precondition violated: {msg}"),
            Error::Internal(msg) => write!(f, "internal invariant violated: {msg}"),
        }
    }
}

impl core::error::Error for Error {}
