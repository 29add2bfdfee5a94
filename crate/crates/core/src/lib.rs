//! Exact arithmetic for quaternion algebras over the rationals.
//!
//! The crate recognizes quaternion algebras presented by multiplication
//! tables, normalizes quadratic forms over `Q` and over `Z` localized at a
//! prime, evaluates Hilbert symbols at every place of `Q` (including the
//! dyadic one), splits algebras that are matrix rings, and computes maximal
//! `Z`-orders.
//!
//! Everything is exact: integers are arbitrary precision and scalars are
//! reduced fractions. Randomized routines take an explicit seed.
//!
//! The crate is `no_std` and needs only `alloc`.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod algebra;
pub mod arith;
mod error;
pub mod linalg;
pub mod orders;
pub mod quadform;
pub mod quaternion;
pub mod symbols;
pub mod trace;

pub use arith::{Place, Rational, Valuation};
pub use error::Error;

pub type Result<T> = core::result::Result<T, Error>;
