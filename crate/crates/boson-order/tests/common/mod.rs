#![allow(dead_code)]

use boson_core::kernel::rat;
use boson_core::{
    Monomial, MultiPoly, OrderedMonomial, OrderedPolynomial, OrderingParam, Rational, Symbol,
};
use num_bigint::BigInt;
use rand::Rng;

pub const VALUES: [(i64, i64); 5] = [(-1, 1), (-1, 2), (0, 1), (1, 2), (1, 1)];

pub fn value(i: usize) -> OrderingParam {
    OrderingParam::value(rat(VALUES[i].0, VALUES[i].1)).unwrap()
}

pub fn value_rational(i: usize) -> Rational {
    rat(VALUES[i].0, VALUES[i].1)
}

fn random_coeff<R: Rng>(rng: &mut R) -> MultiPoly {
    let symbols = ["s", "x", "y"];
    let mut p = MultiPoly::zero();
    for _ in 0..rng.random_range(1..=3) {
        let mut m = Monomial::one();
        for sym in symbols {
            let e = rng.random_range(0..=2u32);
            m = m.mul(&Monomial::power(
                Symbol::new(sym),
                e * u32::from(rng.random_bool(0.4)),
            ));
        }
        let den = rng.random_range(1..=5i64);
        let num = rng.random_range(-9..=9i64);
        p.add_term(m, rat(num, den));
    }
    p
}

/// Canonical polynomial with random ordering, monomials and coefficients.
pub fn random_polynomial<R: Rng>(rng: &mut R) -> OrderedPolynomial {
    let ordering = match rng.random_range(0..6) {
        5 => OrderingParam::symbol("s"),
        i => value(i),
    };
    let terms: Vec<(OrderedMonomial, MultiPoly)> = (0..rng.random_range(0..6))
        .map(|_| {
            (
                OrderedMonomial::new(rng.random_range(0..4), rng.random_range(0..4)),
                random_coeff(rng),
            )
        })
        .collect();
    OrderedPolynomial::from_terms(ordering, terms)
}

const TOKENS: &[&str] = &[
    "a",
    "ad",
    "a†",
    "†",
    "N[",
    "A[",
    "W[",
    "S[",
    "S[s;",
    "S[-1/2;",
    "(",
    ")",
    "[",
    "]",
    ";",
    "^",
    "^2",
    "2",
    "1/3",
    "/",
    "0",
    "-",
    "+",
    "*",
    " ",
    "s",
    "x",
    "\u{ff}",
    "99999999999999999999",
];

/// Either raw bytes or a soup of grammar tokens, which reaches deeper into
/// the parser.
pub fn random_input<R: Rng>(rng: &mut R) -> Vec<u8> {
    let len = rng.random_range(0..40);
    if rng.random_bool(0.5) {
        (0..len).map(|_| rng.random()).collect()
    } else {
        (0..len)
            .flat_map(|_| TOKENS[rng.random_range(0..TOKENS.len())].bytes())
            .collect()
    }
}

fn binom(n: u64, k: u64) -> BigInt {
    (0..k).fold(BigInt::from(1), |acc, i| acc * (n - i) / (i + 1))
}

/// `S(n, k) = (1/k!) Σ_j (-1)^j C(k, j) (k - j)^n`.
pub fn stirling_explicit(n: u64, k: u64) -> BigInt {
    let mut sum = BigInt::from(0);
    for j in 0..=k {
        let term = binom(k, j) * BigInt::from(k - j).pow(n as u32);
        if j % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    let fact: BigInt = (1..=k).fold(BigInt::from(1), |acc, i| acc * i);
    sum / fact
}
