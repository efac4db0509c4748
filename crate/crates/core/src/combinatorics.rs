//! Stirling numbers of the second kind, Bell polynomials and their
//! exponential generating function.
//!
//! `S(n, k)` counts partitions of an `n`-set into `k` nonempty blocks. The
//! Bell polynomial `B(n, x) = Σ_k S(n, k) x^k` has exponential generating
//! function `Σ_n B(n, x) λ^n / n! = exp((e^λ - 1) x)`. The `k = 0` column is
//! stored as well (`S(0, 0) = 1`, `S(n, 0) = 0` otherwise), so `B(0, x) = 1`.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::kernel::{FormalSeries, MultiPoly, Rational};

/// Triangle of `S(n, k)` for `0 <= k <= n <= max_n`, built with the
/// recurrence `S(n+1, k) = k S(n, k) + S(n, k-1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StirlingTable {
    rows: Vec<Vec<BigUint>>,
}

impl StirlingTable {
    pub fn new(max_n: usize) -> Self {
        let mut rows: Vec<Vec<BigUint>> = Vec::with_capacity(max_n + 1);
        rows.push(vec![BigUint::one()]);
        for n in 0..max_n {
            let prev = &rows[n];
            let mut next = vec![BigUint::zero(); n + 2];
            for (k, slot) in next.iter_mut().enumerate().skip(1) {
                let stay = prev
                    .get(k)
                    .map(|v| v * BigUint::from(k))
                    .unwrap_or_default();
                *slot = stay + &prev[k - 1];
            }
            rows.push(next);
        }
        StirlingTable { rows }
    }

    pub fn max_n(&self) -> usize {
        self.rows.len() - 1
    }

    /// `S(n, k)`; zero for `k > n`.
    ///
    /// Panics if `n` exceeds the table size.
    pub fn get(&self, n: usize, k: usize) -> BigUint {
        assert!(
            n <= self.max_n(),
            "n = {n} beyond table size {}",
            self.max_n()
        );
        self.rows[n].get(k).cloned().unwrap_or_default()
    }

    /// `[S(n, 0), ..., S(n, n)]`.
    pub fn row(&self, n: usize) -> &[BigUint] {
        &self.rows[n]
    }
}

pub fn stirling2(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    StirlingTable::new(n).get(n, k)
}

/// `B(n, x)` stored by its coefficient list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BellPoly {
    n: usize,
    coeffs: Vec<BigUint>,
}

impl BellPoly {
    pub fn degree_index(&self) -> usize {
        self.n
    }

    /// Coefficient of `x^k` at index `k`.
    pub fn coeffs(&self) -> &[BigUint] {
        &self.coeffs
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        // Horner
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + Rational::from_integer(BigInt::from(c.clone()));
        }
        acc
    }

    /// `B(n, x)` with a polynomial substituted for `x`.
    pub fn compose(&self, x: &MultiPoly) -> MultiPoly {
        let mut acc = MultiPoly::zero();
        for c in self.coeffs.iter().rev() {
            acc = &acc * x;
            acc += &MultiPoly::constant(Rational::from_integer(BigInt::from(c.clone())));
        }
        acc
    }
}

pub fn bell_poly(n: usize) -> BellPoly {
    let table = StirlingTable::new(n);
    BellPoly {
        n,
        coeffs: table.row(n).to_vec(),
    }
}

pub fn bell_number(n: usize) -> BigUint {
    StirlingTable::new(n).row(n).iter().sum()
}

/// `exp((e^λ - 1) x)` truncated after `λ^order`. `n!` times the coefficient
/// of `λ^n` is `B(n, x)`.
pub fn bell_generating_series(x: &MultiPoly, order: usize) -> FormalSeries {
    let shifted = FormalSeries::exp_linear(order, &Rational::one())
        .try_sub(&FormalSeries::one(order))
        .expect("same order");
    shifted
        .scale(x)
        .exp()
        .expect("e^λ - 1 has no constant term")
}

pub fn factorial(n: usize) -> BigUint {
    (1..=n).map(BigUint::from).product()
}

pub fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}
