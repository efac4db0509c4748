//! Exact arithmetic: rationals, sparse multivariate polynomials over the
//! rationals, and truncated power series in a single formal variable `λ`.

mod poly;
mod series;

pub use poly::{Bindings, Monomial, MultiPoly, Symbol};
pub use series::FormalSeries;

use alloc::string::String;

use num_bigint::BigInt;
use num_traits::{One, Signed};

/// Arbitrary-precision rational, always kept in lowest terms with a positive
/// denominator.
pub type Rational = num_rational::BigRational;

/// Shorthand for `num / den`.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

/// Canonical scalar text: integers bare, proper fractions in parentheses.
pub(crate) fn scalar_text(value: &Rational) -> String {
    if value.denom().is_one() {
        alloc::format!("{}", value.numer())
    } else {
        alloc::format!("({}/{})", value.numer(), value.denom())
    }
}

/// Plain `p/q` form without parentheses, used where a rational stands alone
/// (ordering tags, JSON).
pub fn rational_text(value: &Rational) -> String {
    if value.denom().is_one() {
        alloc::format!("{}", value.numer())
    } else {
        alloc::format!("{}/{}", value.numer(), value.denom())
    }
}

pub(crate) fn is_unit_magnitude(value: &Rational) -> bool {
    value.abs().is_one()
}
