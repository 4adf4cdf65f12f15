//! Group algebras `Z_p D` of finitely generated abelian groups
//! `D = C_{p^{k_1}} × … × C_{p^{k_l}} × Z^r`, the augmentation certificates for
//! non-zero-divisors and independent rows, and exhaustive oracles for the
//! finite case.
//!
//! A certificate is sufficient, not necessary: a matrix whose augmentation is
//! singular is not claimed to be a zero divisor. On finite algebras the
//! oracles settle the question.

mod element;
mod integral;
mod matrix;
mod parse;
mod rows;

pub use element::{binomial_mod_p, AbelianGroupSpec, AlgebraElement, Monomial};
pub use integral::{certify_row_independence_rational, IntegralElement, IntegralSpec, RationalCertificate};
pub use matrix::{
    certify_non_zero_divisor, decide_non_zero_divisor, AlgebraMatrix, NonZeroDivisorCertificate, Side, Verdict,
};
pub use rows::{certify_row_independence, find_annihilator, RowCertificate, RowFamily};
