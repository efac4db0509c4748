//! Brute-force canonical ordering by repeated commutator substitution.
//!
//! Normal order rewrites `a a† → a† a + 1` and anti-normal order rewrites
//! `a† a → a a† - 1` until no adjacent inversion is left. Both rules strictly
//! reduce the inversion count, so processing words from the highest inversion
//! count down visits every intermediate word exactly once.
//!
//! This is the ground-truth oracle, not the fast path: term growth is
//! exponential in the word length and inputs are capped.

use alloc::collections::BTreeMap;
use alloc::string::ToString;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{Letter, OrderedMonomial, OrderedPolynomial, OrderingParam, Word};
use crate::combinatorics::factorial;
use crate::error::{Error, Result};
use crate::kernel::{MultiPoly, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CanonicalOrder {
    /// All `a†` left of all `a`.
    Normal,
    /// All `a` left of all `a†`.
    AntiNormal,
}

impl CanonicalOrder {
    pub fn ordering(self) -> OrderingParam {
        match self {
            CanonicalOrder::Normal => OrderingParam::normal(),
            CanonicalOrder::AntiNormal => OrderingParam::anti_normal(),
        }
    }

    /// Bit value of the letter that belongs on the right.
    fn late(self) -> bool {
        match self {
            CanonicalOrder::Normal => false,
            CanonicalOrder::AntiNormal => true,
        }
    }

    fn contraction_sign(self) -> i32 {
        match self {
            CanonicalOrder::Normal => 1,
            CanonicalOrder::AntiNormal => -1,
        }
    }
}

/// Word packed into a bit string: bit `i` set means letter `i` is `a†`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct Packed {
    len: u8,
    bits: u64,
}

impl Packed {
    fn from_word(word: &Word) -> Packed {
        let bits = word
            .letters()
            .iter()
            .enumerate()
            .filter(|(_, l)| **l == Letter::Creation)
            .fold(0u64, |acc, (i, _)| acc | (1 << i));
        Packed {
            len: word.len() as u8,
            bits,
        }
    }

    fn bit(self, i: usize) -> bool {
        self.bits >> i & 1 == 1
    }

    /// Number of pairs `i < j` where letter `i` should come after letter `j`.
    fn inversions(self, order: CanonicalOrder) -> u32 {
        let late = order.late();
        let mut seen_late = 0;
        let mut total = 0;
        for i in 0..self.len as usize {
            if self.bit(i) == late {
                seen_late += 1;
            } else {
                total += seen_late;
            }
        }
        total
    }

    fn adjacent_inversions(self, order: CanonicalOrder) -> impl Iterator<Item = usize> {
        let late = order.late();
        (0..(self.len as usize).saturating_sub(1))
            .filter(move |&i| self.bit(i) == late && self.bit(i + 1) != late)
    }

    fn swapped(self, i: usize) -> Packed {
        Packed {
            len: self.len,
            bits: self.bits ^ (0b11 << i),
        }
    }

    fn without_pair(self, i: usize) -> Packed {
        let low = self.bits & ((1u64 << i) - 1);
        let high = self.bits >> (i + 2);
        Packed {
            len: self.len - 2,
            bits: low | (high << i),
        }
    }

    fn mono(self) -> OrderedMonomial {
        let dag = self.bits.count_ones();
        OrderedMonomial::new(dag, self.len as u32 - dag)
    }
}

/// Commutator rewriter with a word-length cap.
#[derive(Clone, Copy, Debug)]
pub struct Rewriter {
    cap: usize,
}

impl Default for Rewriter {
    fn default() -> Self {
        Rewriter {
            cap: Self::DEFAULT_CAP,
        }
    }
}

impl Rewriter {
    pub const DEFAULT_CAP: usize = 16;
    /// Hard limit imposed by the packed word representation.
    pub const MAX_CAP: usize = 64;

    pub fn with_cap(cap: usize) -> Self {
        Rewriter {
            cap: cap.min(Self::MAX_CAP),
        }
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn order(&self, word: &Word, target: CanonicalOrder) -> Result<OrderedPolynomial> {
        self.order_with(word, target, |_| 0)
    }

    /// Like [`Rewriter::order`], but `pick(k)` chooses which of the `k`
    /// adjacent inversions of the current word to rewrite next (taken modulo
    /// `k`). The result does not depend on the choice.
    pub fn order_with(
        &self,
        word: &Word,
        target: CanonicalOrder,
        mut pick: impl FnMut(usize) -> usize,
    ) -> Result<OrderedPolynomial> {
        if word.len() > self.cap {
            return Err(Error::LengthCap {
                len: word.len(),
                cap: self.cap,
            });
        }
        let sign = BigInt::from(target.contraction_sign());
        let mut pending: BTreeMap<(u32, Packed), BigInt> = BTreeMap::new();
        let mut finished: BTreeMap<OrderedMonomial, BigInt> = BTreeMap::new();
        let start = Packed::from_word(word);
        pending.insert((start.inversions(target), start), BigInt::one());

        while let Some(((inv, packed), coeff)) = pending.pop_last() {
            if coeff.is_zero() {
                continue;
            }
            if inv == 0 {
                *finished.entry(packed.mono()).or_default() += coeff;
                continue;
            }
            let sites: alloc::vec::Vec<usize> = packed.adjacent_inversions(target).collect();
            let site = sites[pick(sites.len()) % sites.len()];
            let swapped = packed.swapped(site);
            *pending
                .entry((swapped.inversions(target), swapped))
                .or_default() += &coeff;
            let shorter = packed.without_pair(site);
            *pending
                .entry((shorter.inversions(target), shorter))
                .or_default() += coeff * &sign;
        }

        Ok(OrderedPolynomial::from_terms(
            target.ordering(),
            finished
                .into_iter()
                .map(|(mono, c)| (mono, MultiPoly::constant(Rational::from_integer(c)))),
        ))
    }
}

/// Normal form of a word by rewriting, with the default length cap.
pub fn word_normal_order(word: &Word) -> Result<OrderedPolynomial> {
    Rewriter::default().order(word, CanonicalOrder::Normal)
}

/// Anti-normal form of a word by rewriting, with the default length cap.
pub fn word_antinormal_order(word: &Word) -> Result<OrderedPolynomial> {
    Rewriter::default().order(word, CanonicalOrder::AntiNormal)
}

/// Linear extension of the rewriter to a sum of scaled words.
pub fn expr_combine(
    terms: &[(MultiPoly, Word)],
    target: CanonicalOrder,
) -> Result<OrderedPolynomial> {
    let rewriter = Rewriter::default();
    let mut out = OrderedPolynomial::zero(target.ordering());
    for (coeff, word) in terms {
        let canonical = rewriter.order(word, target)?;
        out = out.try_add(&canonical.scale(coeff))?;
    }
    Ok(out)
}

/// `⟨0| p |0⟩` for a normal or anti-normal polynomial.
///
/// In normal order only the constant term survives; in anti-normal order
/// each `a^k a†^k` contributes `k!`.
pub fn vacuum_expectation(p: &OrderedPolynomial) -> Result<MultiPoly> {
    if p.ordering().is_normal() {
        Ok(p.coeff(0, 0))
    } else if p.ordering().is_anti_normal() {
        let mut total = MultiPoly::zero();
        for (mono, coeff) in p.terms() {
            if mono.dag == mono.ann {
                let weight = Rational::from_integer(BigInt::from(factorial(mono.dag as usize)));
                total += &coeff.scale(&weight);
            }
        }
        Ok(total)
    } else {
        Err(Error::UnsupportedOrdering(p.ordering().to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::int;
    use alloc::vec::Vec;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn poly(ordering: OrderingParam, terms: &[(u32, u32, i64)]) -> OrderedPolynomial {
        OrderedPolynomial::from_terms(
            ordering,
            terms
                .iter()
                .map(|&(m, n, c)| (OrderedMonomial::new(m, n), MultiPoly::constant(int(c)))),
        )
    }

    #[test]
    fn normal_order_examples() {
        let n = OrderingParam::normal;
        assert_eq!(
            word_normal_order(&w("a ad")).unwrap(),
            poly(n(), &[(1, 1, 1), (0, 0, 1)])
        );
        assert_eq!(
            word_normal_order(&w("ad a ad a")).unwrap(),
            poly(n(), &[(2, 2, 1), (1, 1, 1)])
        );
        assert_eq!(
            word_normal_order(&w("a a ad ad")).unwrap(),
            poly(n(), &[(2, 2, 1), (1, 1, 4), (0, 0, 2)])
        );
    }

    #[test]
    fn antinormal_order_examples() {
        let an = OrderingParam::anti_normal;
        assert_eq!(
            word_antinormal_order(&w("ad a")).unwrap(),
            poly(an(), &[(1, 1, 1), (0, 0, -1)])
        );
        assert_eq!(
            word_antinormal_order(&w("ad a ad a")).unwrap(),
            poly(an(), &[(2, 2, 1), (1, 1, -3), (0, 0, 1)])
        );
        assert_eq!(
            word_antinormal_order(&Word::empty()).unwrap(),
            poly(an(), &[(0, 0, 1)])
        );
    }

    #[test]
    fn combine_examples() {
        let two = MultiPoly::constant(int(2));
        let p = expr_combine(
            &[(two.clone(), w("a ad")), (-&two, w("ad a"))],
            CanonicalOrder::Normal,
        )
        .unwrap();
        assert_eq!(p, poly(OrderingParam::normal(), &[(0, 0, 2)]));

        let p = expr_combine(
            &[
                (MultiPoly::one(), w("a ad")),
                (MultiPoly::constant(int(-1)), w("ad a")),
                (MultiPoly::constant(int(-1)), Word::empty()),
            ],
            CanonicalOrder::Normal,
        )
        .unwrap();
        assert!(p.is_zero());

        let p = expr_combine(
            &[(MultiPoly::constant(int(3)), Word::empty())],
            CanonicalOrder::AntiNormal,
        )
        .unwrap();
        assert_eq!(p, poly(OrderingParam::anti_normal(), &[(0, 0, 3)]));
    }

    #[test]
    fn vacuum_examples() {
        let one = MultiPoly::one();
        assert_eq!(
            vacuum_expectation(&word_normal_order(&w("a ad")).unwrap()).unwrap(),
            one
        );
        for n in 1..6 {
            let p = word_normal_order(&w("ad a").repeat(n)).unwrap();
            assert!(vacuum_expectation(&p).unwrap().is_zero());
        }
        let p = word_antinormal_order(&w("a a ad ad")).unwrap();
        assert_eq!(vacuum_expectation(&p).unwrap(), MultiPoly::constant(int(2)));
        let weyl = OrderedPolynomial::zero(OrderingParam::weyl());
        assert!(matches!(
            vacuum_expectation(&weyl),
            Err(Error::UnsupportedOrdering(_))
        ));
    }

    #[test]
    fn length_cap() {
        let long = w("a").repeat(17);
        assert_eq!(
            word_normal_order(&long).unwrap_err(),
            Error::LengthCap { len: 17, cap: 16 }
        );
        assert!(Rewriter::with_cap(20)
            .order(&long, CanonicalOrder::Normal)
            .is_ok());
    }

    fn all_words(max_len: usize) -> Vec<Word> {
        let mut out = Vec::new();
        for len in 0..=max_len {
            for bits in 0u32..(1 << len) {
                out.push(
                    (0..len)
                        .map(|i| {
                            if bits >> i & 1 == 1 {
                                Letter::Creation
                            } else {
                                Letter::Annihilation
                            }
                        })
                        .collect(),
                );
            }
        }
        out
    }

    #[test]
    fn excess_is_preserved() {
        for word in all_words(8) {
            let excess = word.creations() as i64 - word.annihilations() as i64;
            for target in [CanonicalOrder::Normal, CanonicalOrder::AntiNormal] {
                let p = Rewriter::default().order(&word, target).unwrap();
                assert!(p.terms().all(|(m, _)| m.excess() == excess), "{word}");
            }
        }
    }

    #[test]
    fn vacuum_agrees_between_orders() {
        for word in all_words(8) {
            let n = vacuum_expectation(&word_normal_order(&word).unwrap()).unwrap();
            let an = vacuum_expectation(&word_antinormal_order(&word).unwrap()).unwrap();
            assert_eq!(n, an, "{word}");
        }
    }

    #[test]
    fn rewrite_strategy_does_not_matter() {
        // xorshift keeps the strategy deterministic without a dev-dependency
        let mut state = 0x9e37_79b9_7f4a_7c15u64;
        let mut next = move |k: usize| {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state % k as u64) as usize
        };
        for word in all_words(8) {
            for target in [CanonicalOrder::Normal, CanonicalOrder::AntiNormal] {
                let r = Rewriter::default();
                let first = r.order(&word, target).unwrap();
                let last = r.order_with(&word, target, |k| k - 1).unwrap();
                let random = r.order_with(&word, target, &mut next).unwrap();
                assert_eq!(first, last, "{word}");
                assert_eq!(first, random, "{word}");
            }
        }
    }
}
