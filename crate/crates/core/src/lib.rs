//! Constant-term sequences `b_n = ct[P(x)^n Q(x)]` for Laurent trinomials `P`,
//! studied modulo primes.
//!
//! - [`digits`]: base-p numerals of unbounded length.
//! - [`laurent`]: exact Laurent polynomials and the trinomial shape.
//! - [`trinomial`]: `a_n = ct[P^n]`, exactly and through the digit-product law.
//! - [`combo`] / [`reduce`]: the normal form `(1/d)·Σ c_i·a_{n+i}` and the
//!   reduction of `ct[P^n Q]` to it.
//! - [`recurrence`]: classification, zero runs, density, recurrence witnesses.
//! - [`catalog`]: named sequences with vendored reference terms.
//! - [`cli`]: the command-line surface.


pub mod catalog;
pub mod cli;
pub mod combo;
pub mod digits;
pub mod error;
pub mod laurent;
pub mod modular;
pub mod recurrence;
pub mod reduce;
pub mod trinomial;

pub use combo::{ComboMod, ComboSpec};
pub use digits::BasePDigits;
pub use error::{Error, Result};
pub use laurent::{ConstantTermMod, LaurentPoly, Trinomial};
pub use reduce::ReductionResult;
pub use trinomial::DigitTable;
