use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::One;

use super::{MultiPoly, Rational};
use crate::error::{Error, Result};

/// Power series in `λ` truncated after `λ^order`. Coefficients are
/// polynomials; index `j` holds the coefficient of `λ^j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormalSeries {
    coeffs: Vec<MultiPoly>,
}

impl FormalSeries {
    pub const DEFAULT_ORDER: usize = 12;

    pub fn zero(order: usize) -> Self {
        FormalSeries {
            coeffs: vec![MultiPoly::zero(); order + 1],
        }
    }

    pub fn constant(order: usize, value: MultiPoly) -> Self {
        let mut out = Self::zero(order);
        out.coeffs[0] = value;
        out
    }

    pub fn one(order: usize) -> Self {
        Self::constant(order, MultiPoly::one())
    }

    /// `coeff · λ^power`, or zero when the power lies past the truncation.
    pub fn monomial(order: usize, power: usize, coeff: MultiPoly) -> Self {
        let mut out = Self::zero(order);
        if power <= order {
            out.coeffs[power] = coeff;
        }
        out
    }

    /// Builds a series from leading coefficients; missing ones are zero and
    /// anything past `order` is dropped.
    pub fn from_coeffs(order: usize, coeffs: impl IntoIterator<Item = MultiPoly>) -> Self {
        let mut out = Self::zero(order);
        for (slot, c) in out.coeffs.iter_mut().zip(coeffs) {
            *slot = c;
        }
        out
    }

    /// `exp(rate · λ)`.
    pub fn exp_linear(order: usize, rate: &Rational) -> Self {
        let mut coeffs = Vec::with_capacity(order + 1);
        let mut term = Rational::one();
        for j in 0..=order {
            if j > 0 {
                term = term * rate / Rational::from_integer(j.into());
            }
            coeffs.push(MultiPoly::constant(term.clone()));
        }
        FormalSeries { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, power: usize) -> &MultiPoly {
        &self.coeffs[power]
    }

    pub fn coeffs(&self) -> &[MultiPoly] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(MultiPoly::is_zero)
    }

    /// Lowest power with a nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    fn check_order(&self, other: &FormalSeries) -> Result<()> {
        if self.order() != other.order() {
            return Err(Error::OrderMismatch {
                left: self.order(),
                right: other.order(),
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &FormalSeries) -> Result<FormalSeries> {
        self.check_order(other)?;
        Ok(FormalSeries {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn try_sub(&self, other: &FormalSeries) -> Result<FormalSeries> {
        self.try_add(&other.neg())
    }

    /// Cauchy product cut at the common truncation order.
    pub fn try_mul(&self, other: &FormalSeries) -> Result<FormalSeries> {
        self.check_order(other)?;
        let order = self.order();
        let mut coeffs = vec![MultiPoly::zero(); order + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..=order - i].iter().enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] += &(a * b);
                }
            }
        }
        Ok(FormalSeries { coeffs })
    }

    pub fn neg(&self) -> FormalSeries {
        FormalSeries {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn scale(&self, factor: &MultiPoly) -> FormalSeries {
        FormalSeries {
            coeffs: self.coeffs.iter().map(|c| c * factor).collect(),
        }
    }

    pub fn scale_rational(&self, factor: &Rational) -> FormalSeries {
        FormalSeries {
            coeffs: self.coeffs.iter().map(|c| c.scale(factor)).collect(),
        }
    }

    /// `self^exp` by repeated truncated multiplication; `self^0 = 1`.
    pub fn pow(&self, exp: u32) -> FormalSeries {
        let mut acc = FormalSeries::one(self.order());
        for _ in 0..exp {
            acc = acc.try_mul(self).expect("orders agree");
        }
        acc
    }

    /// `Σ_j self^j / j!`, which terminates at `j = order` because the constant
    /// term is zero.
    pub fn exp(&self) -> Result<FormalSeries> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::NonzeroConstantTerm);
        }
        let order = self.order();
        let mut total = FormalSeries::one(order);
        let mut power = FormalSeries::one(order);
        for j in 1..=order {
            power = power
                .try_mul(self)?
                .scale_rational(&Rational::new(1.into(), (j as i64).into()));
            if power.is_zero() {
                break;
            }
            total = total.try_add(&power)?;
        }
        Ok(total)
    }

    /// Substitutes `λ → -λ`.
    pub fn reflect(&self) -> FormalSeries {
        FormalSeries {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(j, c)| if j % 2 == 1 { -c } else { c.clone() })
                .collect(),
        }
    }
}

impl fmt::Display for FormalSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match j {
                0 => write!(f, "{c}")?,
                _ => {
                    let lam = if j == 1 {
                        alloc::string::String::from("lambda")
                    } else {
                        alloc::format!("lambda^{j}")
                    };
                    write!(f, "{}{lam}", c.coefficient_prefix())?;
                }
            }
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " + O(lambda^{})", self.order() + 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::{int, rat};

    fn lam(order: usize, coeffs: &[Rational]) -> FormalSeries {
        FormalSeries::from_coeffs(order, coeffs.iter().cloned().map(MultiPoly::constant))
    }

    #[test]
    fn cauchy_product_truncates() {
        let a = lam(2, &[int(1), int(1)]);
        let b = lam(2, &[int(1), int(-1)]);
        assert_eq!(a.try_mul(&b).unwrap(), lam(2, &[int(1), int(0), int(-1)]));
    }

    #[test]
    fn exp_times_reflected_exp_is_one() {
        let e = FormalSeries::exp_linear(3, &int(1));
        let inv = FormalSeries::exp_linear(3, &int(-1));
        assert_eq!(e.try_mul(&inv).unwrap(), FormalSeries::one(3));
    }

    #[test]
    fn additive_identity() {
        let a = lam(4, &[int(2), rat(1, 3), int(0), int(5)]);
        assert_eq!(a.try_add(&FormalSeries::zero(4)).unwrap(), a);
    }

    #[test]
    fn order_mismatch_is_an_error() {
        let err = FormalSeries::one(2)
            .try_mul(&FormalSeries::one(3))
            .unwrap_err();
        assert_eq!(err, Error::OrderMismatch { left: 2, right: 3 });
    }

    #[test]
    fn exp_examples() {
        assert_eq!(FormalSeries::zero(5).exp().unwrap(), FormalSeries::one(5));
        let x = lam(4, &[int(0), int(1)]);
        assert_eq!(
            x.exp().unwrap(),
            lam(4, &[int(1), int(1), rat(1, 2), rat(1, 6), rat(1, 24)])
        );
        let shifted = FormalSeries::exp_linear(4, &int(1))
            .try_sub(&FormalSeries::one(4))
            .unwrap();
        let g = shifted.exp().unwrap();
        assert_eq!(g.coeff(4), &MultiPoly::constant(rat(15, 24)));
        assert_eq!(
            FormalSeries::one(3).exp().unwrap_err(),
            Error::NonzeroConstantTerm
        );
    }

    #[test]
    fn pow_examples() {
        let em1 = FormalSeries::exp_linear(3, &int(1))
            .try_sub(&FormalSeries::one(3))
            .unwrap();
        assert_eq!(em1.pow(1), lam(3, &[int(0), int(1), rat(1, 2), rat(1, 6)]));
        assert_eq!(em1.pow(2).coeff(2), &MultiPoly::one());
        assert_eq!(em1.pow(0), FormalSeries::one(3));
    }
}
