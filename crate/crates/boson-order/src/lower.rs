//! Turns a parsed expression into a sum of block products that the
//! contraction engine understands.

use std::collections::BTreeMap;

use boson_core::got::{Block, GotEngine};
use boson_core::{Letter, MultiPoly, OrderedPolynomial, OrderingParam};

use crate::error::{Error, Result};
use crate::parse::Ast;

/// Summand count beyond which lowering gives up.
pub const MAX_SUMMANDS: usize = 100_000;
/// Largest exponent accepted by `^`.
pub const MAX_EXPONENT: u32 = 256;

/// `Σ coeff · Π blocks`, with operator order left to right inside each
/// product.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Expression {
    summands: Vec<(MultiPoly, Vec<Block>)>,
}

impl Expression {
    pub fn summands(&self) -> &[(MultiPoly, Vec<Block>)] {
        &self.summands
    }

    /// The expression as a single polynomial in `target` ordering.
    pub fn order(&self, engine: &GotEngine, target: &OrderingParam) -> Result<OrderedPolynomial> {
        Ok(engine.transform_sum(&self.summands, target)?)
    }
}

fn check(len: usize) -> Result<()> {
    if len > MAX_SUMMANDS {
        return Err(Error::TooManySummands { cap: MAX_SUMMANDS });
    }
    Ok(())
}

fn exponent(exp: u32) -> Result<()> {
    if exp > MAX_EXPONENT {
        return Err(Error::Usage(format!(
            "exponent {exp} exceeds the limit of {MAX_EXPONENT}"
        )));
    }
    Ok(())
}

type Summands = Vec<(MultiPoly, Vec<Block>)>;

fn product(lhs: &Summands, rhs: &Summands) -> Result<Summands> {
    check(lhs.len().saturating_mul(rhs.len()))?;
    let mut out = Vec::with_capacity(lhs.len() * rhs.len());
    for (lc, lb) in lhs {
        for (rc, rb) in rhs {
            let c = lc * rc;
            if c.is_zero() {
                continue;
            }
            out.push((c, lb.iter().chain(rb).cloned().collect()));
        }
    }
    Ok(out)
}

fn unit() -> Summands {
    vec![(MultiPoly::one(), Vec::new())]
}

fn lower_outer(ast: &Ast) -> Result<Summands> {
    match ast {
        Ast::Sum(items) => {
            let mut out = Vec::new();
            for item in items {
                out.extend(lower_outer(item)?);
                check(out.len())?;
            }
            Ok(out)
        }
        Ast::Product(items) => items
            .iter()
            .try_fold(unit(), |acc, item| product(&acc, &lower_outer(item)?)),
        Ast::Power(base, exp) => {
            exponent(*exp)?;
            let base = lower_outer(base)?;
            (0..*exp).try_fold(unit(), |acc, _| product(&acc, &base))
        }
        Ast::LetterRef(l) => Ok(vec![(MultiPoly::one(), vec![Block::letter(*l)])]),
        Ast::ScalarLit(v) => Ok(vec![(MultiPoly::constant(v.clone()), Vec::new())]),
        Ast::SymbolRef(s) => Ok(vec![(MultiPoly::symbol(s.clone()), Vec::new())]),
        Ast::OrderedBlock(inner, ordering) => Ok(lower_inner(inner)?
            .into_iter()
            .map(|((dag, ann), c)| (c, vec![Block::new(dag, ann, ordering.clone())]))
            .collect()),
    }
}

/// Inside an ordered block letters commute, so each product collapses to
/// its letter counts.
type Counted = BTreeMap<(u32, u32), MultiPoly>;

fn counted_product(lhs: &Counted, rhs: &Counted) -> Result<Counted> {
    let mut out = Counted::new();
    for (&(lm, ln), lc) in lhs {
        for (&(rm, rn), rc) in rhs {
            let key = (lm + rm, ln + rn);
            if key.0 as usize + key.1 as usize > GotEngine::MAX_LETTER_CAP {
                return Err(Error::Core(boson_core::Error::SizeCap {
                    letters: key.0 as usize + key.1 as usize,
                    cap: GotEngine::MAX_LETTER_CAP,
                }));
            }
            *out.entry(key).or_default() += &(lc * rc);
        }
    }
    out.retain(|_, c| !c.is_zero());
    check(out.len())?;
    Ok(out)
}

fn counted_unit() -> Counted {
    Counted::from([((0, 0), MultiPoly::one())])
}

fn lower_inner(ast: &Ast) -> Result<Counted> {
    match ast {
        Ast::Sum(items) => {
            let mut out = Counted::new();
            for item in items {
                for (key, c) in lower_inner(item)? {
                    *out.entry(key).or_default() += &c;
                }
            }
            out.retain(|_, c| !c.is_zero());
            Ok(out)
        }
        Ast::Product(items) => items.iter().try_fold(counted_unit(), |acc, item| {
            counted_product(&acc, &lower_inner(item)?)
        }),
        Ast::Power(base, exp) => {
            exponent(*exp)?;
            let base = lower_inner(base)?;
            (0..*exp).try_fold(counted_unit(), |acc, _| counted_product(&acc, &base))
        }
        Ast::LetterRef(Letter::Creation) => Ok(Counted::from([((1, 0), MultiPoly::one())])),
        Ast::LetterRef(Letter::Annihilation) => Ok(Counted::from([((0, 1), MultiPoly::one())])),
        Ast::ScalarLit(v) => Ok(Counted::from([((0, 0), MultiPoly::constant(v.clone()))])),
        Ast::SymbolRef(s) => Ok(Counted::from([((0, 0), MultiPoly::symbol(s.clone()))])),
        Ast::OrderedBlock(..) => Err(Error::NestingUnsupported),
    }
}

/// Distributes sums, expands powers and wraps bare letters as one-letter
/// blocks.
pub fn lower(ast: &Ast) -> Result<Expression> {
    let summands = lower_outer(ast)?
        .into_iter()
        .filter(|(c, _)| !c.is_zero())
        .collect();
    Ok(Expression { summands })
}
