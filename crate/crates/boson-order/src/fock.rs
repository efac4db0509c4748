//! Truncated Fock-space matrices used as an independent check on operator
//! identities.
//!
//! On the `D`-dimensional space spanned by `|0⟩ … |D-1⟩` every product of
//! ladder letters has entries of the form `r · sqrt(max(i,j)! / min(i,j)!)`
//! with `r` rational. [`FockMatrix`] stores `r` exactly and only takes the
//! square root when a floating-point value is requested, so sums with heavy
//! cancellation still compare exactly.

use std::fmt;

use boson_core::got::{Block, BlockSequence};
use boson_core::{Letter, MultiPoly, OrderedPolynomial, OrderingParam, Rational, Word};
use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::lower::Expression;

pub const DEFAULT_DIM: usize = 32;
pub const DEFAULT_TOL: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FockMatrix {
    dim: usize,
    reduced: Vec<Rational>,
}

/// `sqrt(max(i,j)! / min(i,j)!)`.
fn radical(i: usize, j: usize) -> f64 {
    let (lo, hi) = if i < j { (i, j) } else { (j, i) };
    (lo + 1..=hi).map(|k| (k as f64).sqrt()).product()
}

fn factorials(dim: usize) -> Vec<BigInt> {
    let mut out = Vec::with_capacity(dim);
    let mut acc = BigInt::one();
    for k in 0..dim {
        if k > 0 {
            acc *= k;
        }
        out.push(acc.clone());
    }
    out
}

impl FockMatrix {
    pub fn zero(dim: usize) -> Self {
        FockMatrix {
            dim,
            reduced: vec![Rational::zero(); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut out = Self::zero(dim);
        for i in 0..dim {
            out.reduced[i * dim + i] = Rational::one();
        }
        out
    }

    /// `a|i⟩ = sqrt(i) |i-1⟩`.
    pub fn annihilation(dim: usize) -> Self {
        let mut out = Self::zero(dim);
        for i in 1..dim {
            out.reduced[(i - 1) * dim + i] = Rational::one();
        }
        out
    }

    /// `a†|i⟩ = sqrt(i+1) |i+1⟩`, cut off at the top level.
    pub fn creation(dim: usize) -> Self {
        let mut out = Self::zero(dim);
        for i in 1..dim {
            out.reduced[i * dim + i - 1] = Rational::one();
        }
        out
    }

    pub fn letter(letter: Letter, dim: usize) -> Self {
        match letter {
            Letter::Creation => Self::creation(dim),
            Letter::Annihilation => Self::annihilation(dim),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Rational part `r` of entry `(i, j)`.
    pub fn reduced(&self, i: usize, j: usize) -> &Rational {
        &self.reduced[i * self.dim + j]
    }

    pub fn entry(&self, i: usize, j: usize) -> f64 {
        let r = self.reduced(i, j);
        if r.is_zero() {
            return 0.0;
        }
        r.to_f64().unwrap_or(f64::NAN) * radical(i, j)
    }

    pub fn to_dense(&self) -> Vec<Vec<f64>> {
        (0..self.dim)
            .map(|i| (0..self.dim).map(|j| self.entry(i, j)).collect())
            .collect()
    }

    pub fn add(&self, other: &FockMatrix) -> FockMatrix {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        FockMatrix {
            dim: self.dim,
            reduced: self
                .reduced
                .iter()
                .zip(&other.reduced)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &FockMatrix) -> FockMatrix {
        let mut out = self.clone();
        out.add_scaled(other, &-Rational::one());
        out
    }

    /// `self += factor · other`.
    pub fn add_scaled(&mut self, other: &FockMatrix, factor: &Rational) {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        for (slot, r) in self.reduced.iter_mut().zip(&other.reduced) {
            if !r.is_zero() {
                *slot += r * factor;
            }
        }
    }

    pub fn scale(&self, factor: &Rational) -> FockMatrix {
        FockMatrix {
            dim: self.dim,
            reduced: self.reduced.iter().map(|r| r * factor).collect(),
        }
    }

    pub fn mul(&self, other: &FockMatrix) -> FockMatrix {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        let dim = self.dim;
        let fact = factorials(dim);
        let rows: Vec<Vec<usize>> = (0..dim)
            .map(|k| {
                (0..dim)
                    .filter(|&j| !other.reduced(k, j).is_zero())
                    .collect()
            })
            .collect();
        let mut out = Self::zero(dim);
        for i in 0..dim {
            for k in 0..dim {
                let lhs = self.reduced(i, k);
                if lhs.is_zero() {
                    continue;
                }
                for &j in &rows[k] {
                    let (lo, hi) = if i < j { (i, j) } else { (j, i) };
                    let mut term = lhs * other.reduced(k, j);
                    if k > hi {
                        term *= Rational::from_integer(&fact[k] / &fact[hi]);
                    } else if k < lo {
                        term *= Rational::from_integer(&fact[lo] / &fact[k]);
                    }
                    out.reduced[i * dim + j] += term;
                }
            }
        }
        out
    }
}

/// Operators with a truncated Fock representation.
pub trait Realize {
    /// Largest number of ladder letters in any term.
    fn degree(&self) -> usize;
    fn realize(&self, dim: usize) -> Result<FockMatrix>;
}

fn constant(c: &MultiPoly) -> Result<Rational> {
    c.as_constant().ok_or_else(|| {
        let name = c.symbols().into_iter().next().map(|s| s.name().to_string());
        Error::UnboundSymbol(name.unwrap_or_default())
    })
}

fn concrete(ordering: &OrderingParam) -> Result<Rational> {
    match ordering {
        OrderingParam::Value(v) => Ok(v.clone()),
        OrderingParam::Symbol(s) => Err(Error::UnboundSymbol(s.name().to_string())),
    }
}

fn binomial(n: u32, k: u32) -> Rational {
    (0..k).fold(Rational::one(), |acc, i| {
        acc * Rational::from_integer((n - i).into()) / Rational::from_integer((i + 1).into())
    })
}

/// `{a†^m a^n}_s` as a matrix, expanded into normal words
/// `Σ_k k! C(m,k) C(n,k) ((1-s)/2)^k a†^(m-k) a^(n-k)`.
fn ordered_monomial(dag: u32, ann: u32, s: &Rational, dim: usize) -> FockMatrix {
    if s.is_one() {
        return Word::normal(dag as usize, ann as usize)
            .realize(dim)
            .expect("words realize");
    }
    if *s == -Rational::one() {
        return Word::anti_normal(dag as usize, ann as usize)
            .realize(dim)
            .expect("words realize");
    }
    let half = (Rational::one() - s) / Rational::from_integer(2.into());
    let mut out = FockMatrix::zero(dim);
    let mut fact = Rational::one();
    let mut power = Rational::one();
    for k in 0..=dag.min(ann) {
        if k > 0 {
            fact *= Rational::from_integer(k.into());
            power *= &half;
        }
        let c = &fact * binomial(dag, k) * binomial(ann, k) * &power;
        if c.is_zero() {
            continue;
        }
        let word = Word::normal((dag - k) as usize, (ann - k) as usize);
        out.add_scaled(&word.realize(dim).expect("words realize"), &c);
    }
    out
}

impl Realize for Word {
    fn degree(&self) -> usize {
        self.len()
    }

    /// Follows each basis state through the letters, right to left. The
    /// reduced entry only ever picks up integer factors.
    fn realize(&self, dim: usize) -> Result<FockMatrix> {
        let mut out = FockMatrix::zero(dim);
        'columns: for j in 0..dim {
            let mut level = j;
            let mut r = BigInt::one();
            for letter in self.letters().iter().rev() {
                match letter {
                    Letter::Annihilation => {
                        if level == 0 {
                            continue 'columns;
                        }
                        if level > j {
                            r *= level;
                        }
                        level -= 1;
                    }
                    Letter::Creation => {
                        if level + 1 >= dim {
                            continue 'columns;
                        }
                        if level < j {
                            r *= level + 1;
                        }
                        level += 1;
                    }
                }
            }
            out.reduced[level * dim + j] = Rational::from_integer(r);
        }
        Ok(out)
    }
}

impl Realize for Block {
    fn degree(&self) -> usize {
        self.letter_count()
    }

    fn realize(&self, dim: usize) -> Result<FockMatrix> {
        let s = concrete(&self.ordering)?;
        Ok(ordered_monomial(self.mono.dag, self.mono.ann, &s, dim))
    }
}

impl Realize for OrderedPolynomial {
    fn degree(&self) -> usize {
        self.degree() as usize
    }

    fn realize(&self, dim: usize) -> Result<FockMatrix> {
        let s = concrete(self.ordering())?;
        let mut out = FockMatrix::zero(dim);
        for (mono, coeff) in self.terms() {
            let c = constant(coeff)?;
            out.add_scaled(&ordered_monomial(mono.dag, mono.ann, &s, dim), &c);
        }
        Ok(out)
    }
}

fn product(blocks: &[Block], dim: usize) -> Result<FockMatrix> {
    blocks.iter().try_fold(FockMatrix::identity(dim), |acc, b| {
        Ok(acc.mul(&b.realize(dim)?))
    })
}

impl Realize for BlockSequence {
    fn degree(&self) -> usize {
        self.letter_count()
    }

    fn realize(&self, dim: usize) -> Result<FockMatrix> {
        product(self.blocks(), dim)
    }
}

impl Realize for Expression {
    fn degree(&self) -> usize {
        self.summands()
            .iter()
            .map(|(_, blocks)| blocks.iter().map(Block::letter_count).sum())
            .max()
            .unwrap_or(0)
    }

    fn realize(&self, dim: usize) -> Result<FockMatrix> {
        let mut out = FockMatrix::zero(dim);
        for (coeff, blocks) in self.summands() {
            let c = constant(coeff)?;
            if c.is_zero() {
                continue;
            }
            out.add_scaled(&product(blocks, dim)?, &c);
        }
        Ok(out)
    }
}

/// Outcome of comparing two operators on the safe block.
#[derive(Clone, Debug, PartialEq)]
pub struct CheckReport {
    pub dim: usize,
    pub degree: usize,
    /// Rows and columns `0..safe_size` are free of truncation effects.
    pub safe_size: usize,
    pub max_diff: f64,
    pub tol: f64,
    pub pass: bool,
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} max |diff| = {:e} on safe block 0..{} (D={}, degree {}, tol {:e})",
            if self.pass { "PASS" } else { "FAIL" },
            self.max_diff,
            self.safe_size,
            self.dim,
            self.degree,
            self.tol
        )
    }
}

/// Largest entrywise difference between `lhs` and `rhs` over the states an
/// operator of their degree cannot push past the cutoff.
pub fn identity_check<L, R>(lhs: &L, rhs: &R, dim: usize, tol: f64) -> Result<CheckReport>
where
    L: Realize + ?Sized,
    R: Realize + ?Sized,
{
    let degree = lhs.degree().max(rhs.degree());
    if degree >= dim {
        return Err(Error::DegreeTooLarge { degree, dim });
    }
    let safe_size = dim - degree;
    let diff = lhs.realize(dim)?.sub(&rhs.realize(dim)?);
    let mut max_diff = 0.0f64;
    for i in 0..safe_size {
        for j in 0..safe_size {
            let r = diff.reduced(i, j);
            if !r.is_zero() {
                let v = r.abs().to_f64().unwrap_or(f64::INFINITY) * radical(i, j);
                max_diff = max_diff.max(v);
            }
        }
    }
    Ok(CheckReport {
        dim,
        degree,
        safe_size,
        max_diff,
        tol,
        pass: max_diff <= tol,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use boson_core::kernel::{int, rat};
    use boson_core::operator::word_normal_order;
    use boson_core::OrderedMonomial;

    fn word(text: &str) -> Word {
        text.parse().unwrap()
    }

    #[test]
    fn annihilation_entries() {
        let m = word("a").realize(3).unwrap();
        assert_eq!(m.entry(0, 1), 1.0);
        assert!((m.entry(1, 2) - 2f64.sqrt()).abs() < 1e-15);
        let nonzero = m.to_dense().iter().flatten().filter(|v| **v != 0.0).count();
        assert_eq!(nonzero, 2);
    }

    #[test]
    fn number_operator_is_diagonal() {
        let m = word("ad a").realize(4).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                let want = if i == j { i as f64 } else { 0.0 };
                assert_eq!(m.entry(i, j), want);
            }
        }
    }

    #[test]
    fn anti_number_operator_shifts_the_diagonal() {
        let m = word("a ad").realize(4).unwrap();
        for i in 0..3 {
            assert_eq!(m.entry(i, i), (i + 1) as f64);
        }
    }

    #[test]
    fn commutator_is_exactly_the_identity() {
        let dim = 8;
        let a = FockMatrix::annihilation(dim);
        let ad = FockMatrix::creation(dim);
        let comm = a.mul(&ad).sub(&ad.mul(&a));
        for i in 0..dim - 1 {
            for j in 0..dim - 1 {
                assert_eq!(comm.entry(i, j), if i == j { 1.0 } else { 0.0 });
            }
        }
        let report = identity_check(&word("a ad"), &word("ad a"), dim, 0.0);
        assert!(!report.unwrap().pass);
    }

    #[test]
    fn products_match_floating_point_multiplication() {
        let dim = 7;
        let w = word("a a ad a ad ad ad a");
        let exact = w.realize(dim).unwrap().to_dense();
        let mut float = vec![vec![0.0; dim]; dim];
        for (i, row) in float.iter_mut().enumerate() {
            row[i] = 1.0;
        }
        for l in w.letters() {
            let letter = FockMatrix::letter(*l, dim).to_dense();
            let mut next = vec![vec![0.0; dim]; dim];
            for i in 0..dim {
                for k in 0..dim {
                    for j in 0..dim {
                        next[i][j] += float[i][k] * letter[k][j];
                    }
                }
            }
            float = next;
        }
        for i in 0..dim {
            for j in 0..dim {
                assert!((exact[i][j] - float[i][j]).abs() < 1e-9, "({i},{j})");
            }
        }
    }

    #[test]
    fn path_walk_matches_matrix_products() {
        let dim = 6;
        for text in ["a ad ad a a", "ad ad ad", "a a ad a ad ad ad a", "ad a ad"] {
            let w = word(text);
            let product = w
                .letters()
                .iter()
                .fold(FockMatrix::identity(dim), |acc, &l| {
                    acc.mul(&FockMatrix::letter(l, dim))
                });
            assert_eq!(w.realize(dim).unwrap(), product, "{text}");
        }
    }

    #[test]
    fn number_square_against_anti_normal_form() {
        let anti = OrderedPolynomial::from_terms(
            OrderingParam::anti_normal(),
            [
                (OrderedMonomial::new(2, 2), MultiPoly::one()),
                (OrderedMonomial::new(1, 1), MultiPoly::constant(int(-3))),
                (OrderedMonomial::new(0, 0), MultiPoly::one()),
            ],
        );
        let report = identity_check(&word("ad a ad a"), &anti, 16, 1e-9).unwrap();
        assert!(report.pass, "{report}");
        assert_eq!(report.safe_size, 12);
    }

    #[test]
    fn weyl_monomial_is_the_symmetric_average() {
        let weyl = OrderedPolynomial::monomial(
            OrderingParam::weyl(),
            OrderedMonomial::new(1, 1),
            MultiPoly::one(),
        );
        let half = OrderedPolynomial::from_terms(
            OrderingParam::normal(),
            [
                (OrderedMonomial::new(1, 1), MultiPoly::one()),
                (OrderedMonomial::ONE, MultiPoly::constant(rat(1, 2))),
            ],
        );
        assert!(identity_check(&weyl, &half, 10, 0.0).unwrap().pass);
    }

    #[test]
    fn errors() {
        let symbolic = OrderedPolynomial::monomial(
            OrderingParam::symbol("s"),
            OrderedMonomial::new(1, 0),
            MultiPoly::one(),
        );
        assert!(matches!(symbolic.realize(4), Err(Error::UnboundSymbol(s)) if s == "s"));
        let free = OrderedPolynomial::constant(OrderingParam::normal(), MultiPoly::symbol("x"));
        assert!(matches!(free.realize(4), Err(Error::UnboundSymbol(s)) if s == "x"));
        let long = word("a a a a");
        assert!(matches!(
            identity_check(&long, &long, 4, 1e-9),
            Err(Error::DegreeTooLarge { degree: 4, dim: 4 })
        ));
    }

    #[test]
    fn normal_ordering_preserves_the_matrix() {
        for len in 0..=6usize {
            for bits in 0u32..1 << len {
                let w: Word = (0..len)
                    .map(|i| {
                        if bits >> i & 1 == 1 {
                            Letter::Creation
                        } else {
                            Letter::Annihilation
                        }
                    })
                    .collect();
                let normal = word_normal_order(&w).unwrap();
                let report = identity_check(&w, &normal, DEFAULT_DIM, DEFAULT_TOL).unwrap();
                assert!(report.pass, "{w}: {report}");
            }
        }
    }
}
