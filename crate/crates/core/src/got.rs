//! Reordering a product of `s_j`-ordered blocks into one `t`-ordered
//! polynomial by enumerating contractions.
//!
//! Every letter of the product is a distinct position. A contraction pairs
//! one `a†` with one `a`, removes both, and contributes the factor
//! `(t - u) / 2`, where `u` is the relative order parameter of the pair:
//!
//! - `s_j` when both letters sit in block `j`,
//! - `+1` when the `a†` stands in an earlier block than the `a`,
//! - `-1` when the `a` stands in an earlier block than the `a†`.
//!
//! The product equals the sum over all sets of disjoint contractions of the
//! product of their factors times the `t`-ordered monomial of the surviving
//! letters. Positions are never identified, which is what produces the
//! `k! C(m, k) C(n, k)` multiplicities of the single-block conversion.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_traits::One;

use crate::combinatorics::{binomial, factorial};
use crate::error::{Error, Result};
use crate::kernel::{rat, Bindings, MultiPoly, Rational};
use crate::operator::{Letter, OrderedMonomial, OrderedPolynomial, OrderingParam, Word};

/// One factor `{a†^m a^n}_{s_j}` of a product.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block {
    pub mono: OrderedMonomial,
    pub ordering: OrderingParam,
}

impl Block {
    pub fn new(dag: u32, ann: u32, ordering: OrderingParam) -> Self {
        Block {
            mono: OrderedMonomial::new(dag, ann),
            ordering,
        }
    }

    /// A single letter. Its ordering tag is irrelevant since a lone letter
    /// has no internal pairs; `+1` is used.
    pub fn letter(letter: Letter) -> Self {
        match letter {
            Letter::Creation => Block::new(1, 0, OrderingParam::normal()),
            Letter::Annihilation => Block::new(0, 1, OrderingParam::normal()),
        }
    }

    pub fn letter_count(&self) -> usize {
        self.mono.degree() as usize
    }
}

/// `(letter position, block index)`.
type Site = (usize, usize);

/// Ordered product of blocks together with the target ordering `t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockSequence {
    blocks: Vec<Block>,
    target: OrderingParam,
}

impl BlockSequence {
    pub fn new(blocks: Vec<Block>, target: OrderingParam) -> Result<Self> {
        if blocks.is_empty() {
            return Err(Error::EmptySequence);
        }
        Ok(BlockSequence { blocks, target })
    }

    /// One single-letter block per letter; the empty word becomes the unit
    /// block.
    pub fn from_word(word: &Word, target: OrderingParam) -> Self {
        let blocks = if word.is_empty() {
            alloc::vec![Block::new(0, 0, target.clone())]
        } else {
            word.letters().iter().copied().map(Block::letter).collect()
        };
        BlockSequence { blocks, target }
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn target(&self) -> &OrderingParam {
        &self.target
    }

    pub fn letter_count(&self) -> usize {
        self.blocks.iter().map(Block::letter_count).sum()
    }

    pub fn excess(&self) -> i64 {
        self.blocks.iter().map(|b| b.mono.excess()).sum()
    }

    /// Substitutes symbols in every block ordering and in the target.
    pub fn substitute(&self, bindings: &Bindings) -> Result<BlockSequence> {
        Ok(BlockSequence {
            blocks: self
                .blocks
                .iter()
                .map(|b| {
                    Ok(Block {
                        mono: b.mono,
                        ordering: b.ordering.substitute(bindings)?,
                    })
                })
                .collect::<Result<_>>()?,
            target: self.target.substitute(bindings)?,
        })
    }

    /// Creation and annihilation letters as `(position, block)` pairs.
    fn sites(&self) -> (Vec<Site>, Vec<Site>) {
        let mut creations = Vec::new();
        let mut annihilations = Vec::new();
        let mut pos = 0;
        for (j, block) in self.blocks.iter().enumerate() {
            for _ in 0..block.mono.dag {
                creations.push((pos, j));
                pos += 1;
            }
            for _ in 0..block.mono.ann {
                annihilations.push((pos, j));
                pos += 1;
            }
        }
        (creations, annihilations)
    }

    fn pair(&self, creation: (usize, usize), annihilation: (usize, usize)) -> ContractionPair {
        let relative_order = if creation.1 == annihilation.1 {
            RelativeOrder::SameBlock(self.blocks[creation.1].ordering.clone())
        } else if creation.1 < annihilation.1 {
            RelativeOrder::CreationFirst
        } else {
            RelativeOrder::AnnihilationFirst
        };
        ContractionPair {
            creation_pos: creation.0,
            annihilation_pos: annihilation.0,
            relative_order,
        }
    }

    fn totals(&self) -> (u32, u32) {
        self.blocks
            .iter()
            .fold((0, 0), |(m, n), b| (m + b.mono.dag, n + b.mono.ann))
    }
}

/// Where the two letters of a contracted pair stand relative to each other.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RelativeOrder {
    /// Both letters in one block with ordering `s_j`.
    SameBlock(OrderingParam),
    /// `a†` in an earlier block than `a` (relative order `+1`).
    CreationFirst,
    /// `a` in an earlier block than `a†` (relative order `-1`).
    AnnihilationFirst,
}

impl RelativeOrder {
    pub fn parameter(&self) -> MultiPoly {
        match self {
            RelativeOrder::SameBlock(s) => s.as_poly(),
            RelativeOrder::CreationFirst => MultiPoly::one(),
            RelativeOrder::AnnihilationFirst => {
                MultiPoly::constant(Rational::from_integer((-1).into()))
            }
        }
    }

    /// `(t - u) / 2`.
    pub fn factor(&self, target: &OrderingParam) -> MultiPoly {
        (&target.as_poly() - &self.parameter()).scale(&rat(1, 2))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContractionPair {
    pub creation_pos: usize,
    pub annihilation_pos: usize,
    pub relative_order: RelativeOrder,
}

pub fn contraction_factor(pair: &ContractionPair, target: &OrderingParam) -> MultiPoly {
    pair.relative_order.factor(target)
}

/// Pairs that share no letter position.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ContractionSet {
    pairs: Vec<ContractionPair>,
}

impl ContractionSet {
    pub fn pairs(&self) -> &[ContractionPair] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Product of the pair factors.
    pub fn weight(&self, target: &OrderingParam) -> MultiPoly {
        self.pairs.iter().fold(MultiPoly::one(), |acc, p| {
            &acc * &contraction_factor(p, target)
        })
    }
}

/// Contraction enumerator with a cap on the total letter count.
#[derive(Clone, Copy, Debug)]
pub struct GotEngine {
    letter_cap: usize,
}

impl Default for GotEngine {
    fn default() -> Self {
        GotEngine {
            letter_cap: Self::DEFAULT_LETTER_CAP,
        }
    }
}

impl GotEngine {
    pub const DEFAULT_LETTER_CAP: usize = 20;
    /// Bitmask width used for the annihilation letters.
    pub const MAX_LETTER_CAP: usize = 64;

    pub fn with_letter_cap(cap: usize) -> Self {
        GotEngine {
            letter_cap: cap.min(Self::MAX_LETTER_CAP),
        }
    }

    pub fn letter_cap(&self) -> usize {
        self.letter_cap
    }

    fn check(&self, seq: &BlockSequence) -> Result<()> {
        let letters = seq.letter_count();
        if letters > self.letter_cap {
            return Err(Error::SizeCap {
                letters,
                cap: self.letter_cap,
            });
        }
        Ok(())
    }

    /// Factor of every (creation, annihilation) letter pair.
    fn factor_table(seq: &BlockSequence) -> Vec<Vec<MultiPoly>> {
        let (creations, annihilations) = seq.sites();
        creations
            .iter()
            .map(|&c| {
                annihilations
                    .iter()
                    .map(|&a| seq.pair(c, a).relative_order.factor(&seq.target))
                    .collect()
            })
            .collect()
    }

    /// Sums pair-factor products over contraction sets, grouped by set size.
    ///
    /// The state after visiting the first `c` creation letters is the set of
    /// annihilation letters already used; sets reaching the same state are
    /// merged, so the sum is exact without listing every set.
    fn weights_by_size(&self, seq: &BlockSequence) -> Result<BTreeMap<u32, MultiPoly>> {
        self.check(seq)?;
        let table = Self::factor_table(seq);
        let mut states: BTreeMap<u64, MultiPoly> = BTreeMap::new();
        states.insert(0, MultiPoly::one());
        for row in &table {
            let mut next = states.clone();
            for (mask, weight) in &states {
                for (a, factor) in row.iter().enumerate() {
                    if mask >> a & 1 == 1 || factor.is_zero() {
                        continue;
                    }
                    *next.entry(mask | 1 << a).or_default() += &(weight * factor);
                }
            }
            next.retain(|_, w| !w.is_zero());
            states = next;
        }
        let mut by_size: BTreeMap<u32, MultiPoly> = BTreeMap::new();
        for (mask, weight) in states {
            *by_size.entry(mask.count_ones()).or_default() += &weight;
        }
        Ok(by_size)
    }

    /// The product of the blocks rewritten in the target ordering.
    pub fn transform(&self, seq: &BlockSequence) -> Result<OrderedPolynomial> {
        let (dag, ann) = seq.totals();
        let by_size = self.weights_by_size(seq)?;
        Ok(OrderedPolynomial::from_terms(
            seq.target.clone(),
            by_size
                .into_iter()
                .map(|(i, w)| (OrderedMonomial::new(dag - i, ann - i), w)),
        ))
    }

    /// Visits every contraction set, including those whose weight vanishes.
    pub fn for_each_contraction_set(
        &self,
        seq: &BlockSequence,
        mut visit: impl FnMut(&ContractionSet),
    ) -> Result<()> {
        self.check(seq)?;
        let (creations, annihilations) = seq.sites();
        let mut used = alloc::vec![false; annihilations.len()];
        let mut current = ContractionSet::default();
        fn walk(
            seq: &BlockSequence,
            creations: &[(usize, usize)],
            annihilations: &[(usize, usize)],
            next: usize,
            used: &mut [bool],
            current: &mut ContractionSet,
            visit: &mut dyn FnMut(&ContractionSet),
        ) {
            if next == creations.len() {
                visit(current);
                return;
            }
            walk(
                seq,
                creations,
                annihilations,
                next + 1,
                used,
                current,
                visit,
            );
            for a in 0..annihilations.len() {
                if used[a] {
                    continue;
                }
                used[a] = true;
                current
                    .pairs
                    .push(seq.pair(creations[next], annihilations[a]));
                walk(
                    seq,
                    creations,
                    annihilations,
                    next + 1,
                    used,
                    current,
                    visit,
                );
                current.pairs.pop();
                used[a] = false;
            }
        }
        walk(
            seq,
            &creations,
            &annihilations,
            0,
            &mut used,
            &mut current,
            &mut visit,
        );
        Ok(())
    }

    /// Reference path: lists every contraction set explicitly and sums the
    /// weights. Exponentially slower than [`GotEngine::transform`] and meant
    /// for cross-checking it.
    pub fn transform_reference(&self, seq: &BlockSequence) -> Result<OrderedPolynomial> {
        let (dag, ann) = seq.totals();
        let mut out = OrderedPolynomial::zero(seq.target.clone());
        self.for_each_contraction_set(seq, |set| {
            let i = set.len() as u32;
            out.add_term(
                OrderedMonomial::new(dag - i, ann - i),
                set.weight(&seq.target),
            );
        })?;
        Ok(out)
    }

    /// Number of `pairs`-element contraction sets whose weight is nonzero.
    pub fn count_contraction_sets(&self, seq: &BlockSequence, pairs: usize) -> Result<BigUint> {
        self.check(seq)?;
        let table = Self::factor_table(seq);
        let mut states: BTreeMap<u64, BigUint> = BTreeMap::new();
        states.insert(0, BigUint::one());
        for row in &table {
            let mut next = states.clone();
            for (mask, count) in &states {
                for (a, factor) in row.iter().enumerate() {
                    if mask >> a & 1 == 0 && !factor.is_zero() {
                        *next.entry(mask | 1 << a).or_default() += count;
                    }
                }
            }
            states = next;
        }
        Ok(states
            .into_iter()
            .filter(|(mask, _)| mask.count_ones() as usize == pairs)
            .map(|(_, c)| c)
            .sum())
    }

    /// Product of two ordered polynomials, expressed in `target` ordering.
    pub fn multiply(
        &self,
        lhs: &OrderedPolynomial,
        rhs: &OrderedPolynomial,
        target: &OrderingParam,
    ) -> Result<OrderedPolynomial> {
        let mut out = OrderedPolynomial::zero(target.clone());
        for (lm, lc) in lhs.terms() {
            for (rm, rc) in rhs.terms() {
                let seq = BlockSequence::new(
                    alloc::vec![
                        Block {
                            mono: *lm,
                            ordering: lhs.ordering().clone(),
                        },
                        Block {
                            mono: *rm,
                            ordering: rhs.ordering().clone(),
                        },
                    ],
                    target.clone(),
                )?;
                out = out.try_add(&self.transform(&seq)?.scale(&(lc * rc)))?;
            }
        }
        Ok(out)
    }

    /// `Σ coeff · Π blocks` in `target` ordering. An empty block list is the
    /// identity.
    pub fn transform_sum(
        &self,
        summands: &[(MultiPoly, Vec<Block>)],
        target: &OrderingParam,
    ) -> Result<OrderedPolynomial> {
        let mut out = OrderedPolynomial::zero(target.clone());
        for (coeff, blocks) in summands {
            if coeff.is_zero() {
                continue;
            }
            let blocks = if blocks.is_empty() {
                alloc::vec![Block::new(0, 0, target.clone())]
            } else {
                blocks.clone()
            };
            let seq = BlockSequence::new(blocks, target.clone())?;
            out = out.try_add(&self.transform(&seq)?.scale(coeff))?;
        }
        Ok(out)
    }
}

/// [`GotEngine::transform`] with the default letter cap.
pub fn got_transform(seq: &BlockSequence) -> Result<OrderedPolynomial> {
    GotEngine::default().transform(seq)
}

pub fn count_contraction_sets(seq: &BlockSequence, pairs: usize) -> Result<BigUint> {
    GotEngine::default().count_contraction_sets(seq, pairs)
}

/// Re-expresses `p` in another ordering with the single-block closed form
/// `{a†^m a^n}_σ = Σ_k k! C(m,k) C(n,k) ((τ-σ)/2)^k {a†^(m-k) a^(n-k)}_τ`.
pub fn convert_ordering(p: &OrderedPolynomial, target: &OrderingParam) -> OrderedPolynomial {
    if p.ordering() == target {
        return p.clone();
    }
    let step = (&target.as_poly() - &p.ordering().as_poly()).scale(&rat(1, 2));
    let mut out = OrderedPolynomial::zero(target.clone());
    for (mono, coeff) in p.terms() {
        let mut step_power = MultiPoly::one();
        for k in 0..=mono.dag.min(mono.ann) {
            if k > 0 {
                step_power = &step_power * &step;
            }
            let (m, n, k) = (mono.dag as usize, mono.ann as usize, k as usize);
            let count = factorial(k) * binomial(m, k) * binomial(n, k);
            let weight = Rational::from_integer(BigInt::from(count));
            out.add_term(
                OrderedMonomial::new((m - k) as u32, (n - k) as u32),
                (coeff * &step_power).scale(&weight),
            );
        }
    }
    out
}
