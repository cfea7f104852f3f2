//! Exact symbolic computation in the quantum coordinate ring A(SL_q(2)) at
//! roots of unity.
//!
//! The crate provides cyclotomic scalars ([`cyclo`]), the PBW normal-form
//! engine and Hopf structure maps ([`qalgebra`]), the central subalgebra of
//! l-th powers ([`frobenius`]), the explicit free-module basis over the
//! classical coordinate ring A(SL(2)) together with an independent
//! linear-algebra oracle ([`basis`], [`exactla`]), and an expression language
//! ([`expr`]).

pub mod basis;
pub mod cyclo;
pub mod error;
pub mod exactla;
pub mod expr;
pub mod field;
pub mod frobenius;
pub mod json;
pub mod qalgebra;
pub mod selftest;

pub use error::{Error, Result};
pub use field::Field;

/// Arbitrary-precision rational numbers in canonical form.
pub type Rational = num_rational::BigRational;

pub use cyclo::{Cyclotomic, RootSpec};

/// Exact matrices over the scalar fields used in this crate.
pub type CycloMatrix = exactla::ExactMatrix<Cyclotomic>;
pub type RationalMatrix = exactla::ExactMatrix<Rational>;
