//! Exact reordering of single-mode boson operator expressions.
//!
//! Every coefficient is an exact rational or a polynomial with rational
//! coefficients in ordering symbols (`s`, `t`, ...). The crate provides
//!
//! - [`kernel`]: rationals, multivariate polynomials and truncated power series,
//! - [`combinatorics`]: Stirling numbers of the second kind and Bell polynomials,
//! - [`operator`]: ladder-letter words, ordered polynomials and a brute-force
//!   commutator rewriting oracle,
//! - [`got`]: the contraction-enumeration engine that rewrites a product of
//!   `s_j`-ordered blocks into a single `t`-ordered polynomial,
//! - [`identities`]: closed forms for `(a†a)^n` and `exp(λ a†a)` in normal and
//!   anti-normal order.
//!
//! The crate is `no_std` and only needs `alloc`.
#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod combinatorics;
pub mod error;
pub mod got;
pub mod identities;
pub mod kernel;
pub mod operator;

pub use error::{Error, Result};
pub use kernel::{Bindings, FormalSeries, Monomial, MultiPoly, Rational, Symbol};
pub use operator::{Letter, OrderedMonomial, OrderedPolynomial, OrderingParam, Word};
