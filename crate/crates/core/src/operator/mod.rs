//! Ladder-letter words, ordered monomials and ordered polynomials, plus the
//! commutator-rewriting oracle in [`rewrite`].

mod rewrite;

pub use rewrite::{
    expr_combine, vacuum_expectation, word_antinormal_order, word_normal_order, CanonicalOrder,
    Rewriter,
};

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::str::FromStr;

use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::kernel::{int, rational_text, Bindings, MultiPoly, Rational, Symbol};

/// A single ladder operator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    /// `a†`
    Creation,
    /// `a`
    Annihilation,
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Letter::Creation => f.write_str("ad"),
            Letter::Annihilation => f.write_str("a"),
        }
    }
}

/// Finite product of ladder letters, read left to right. The empty word is
/// the identity operator.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn new(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn creations(&self) -> usize {
        self.0.iter().filter(|l| **l == Letter::Creation).count()
    }

    pub fn annihilations(&self) -> usize {
        self.len() - self.creations()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.0.clone();
        letters.extend_from_slice(&other.0);
        Word(letters)
    }

    pub fn repeat(&self, times: usize) -> Word {
        Word(self.0.repeat(times))
    }

    /// `a†^m a^n`
    pub fn normal(dag: usize, ann: usize) -> Word {
        let mut letters = alloc::vec![Letter::Creation; dag];
        letters.extend(core::iter::repeat_n(Letter::Annihilation, ann));
        Word(letters)
    }

    /// `a^n a†^m`
    pub fn anti_normal(dag: usize, ann: usize) -> Word {
        let mut letters = alloc::vec![Letter::Annihilation; ann];
        letters.extend(core::iter::repeat_n(Letter::Creation, dag));
        Word(letters)
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<I: IntoIterator<Item = Letter>>(iter: I) -> Self {
        Word(iter.into_iter().collect())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("1");
        }
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

/// Whitespace-separated `a`, `ad` or `a†` tokens. Used for quick construction
/// in tests and tooling; the full expression grammar lives in the frontend.
impl FromStr for Word {
    type Err = String;

    fn from_str(s: &str) -> core::result::Result<Self, String> {
        s.split_whitespace()
            .map(|tok| match tok {
                "a" => Ok(Letter::Annihilation),
                "ad" | "a†" => Ok(Letter::Creation),
                other => Err(alloc::format!("unknown letter `{other}`")),
            })
            .collect()
    }
}

/// The ordered product `{a†^m a^n}`; within an ordering only the two counts
/// matter.
///
/// Sorted graded by `(m + n, m)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct OrderedMonomial {
    pub dag: u32,
    pub ann: u32,
}

impl OrderedMonomial {
    pub const ONE: OrderedMonomial = OrderedMonomial { dag: 0, ann: 0 };

    pub fn new(dag: u32, ann: u32) -> Self {
        OrderedMonomial { dag, ann }
    }

    pub fn degree(&self) -> u32 {
        self.dag + self.ann
    }

    /// Creation count minus annihilation count.
    pub fn excess(&self) -> i64 {
        self.dag as i64 - self.ann as i64
    }
}

impl Ord for OrderedMonomial {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.degree(), self.dag).cmp(&(other.degree(), other.dag))
    }
}

impl PartialOrd for OrderedMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for OrderedMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.dag {
            0 => {}
            1 => parts.push("ad".to_string()),
            m => parts.push(alloc::format!("ad^{m}")),
        }
        match self.ann {
            0 => {}
            1 => parts.push("a".to_string()),
            n => parts.push(alloc::format!("a^{n}")),
        }
        if parts.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&parts.join(" "))
        }
    }
}

/// The ordering parameter `s` of an `s`-ordered product: `+1` normal, `-1`
/// anti-normal, `0` Weyl (symmetric), or a free symbol.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum OrderingParam {
    Value(Rational),
    Symbol(Symbol),
}

impl OrderingParam {
    pub fn normal() -> Self {
        OrderingParam::Value(int(1))
    }

    pub fn anti_normal() -> Self {
        OrderingParam::Value(int(-1))
    }

    pub fn weyl() -> Self {
        OrderingParam::Value(int(0))
    }

    /// A concrete ordering; must lie in `[-1, 1]`.
    pub fn value(value: Rational) -> Result<Self> {
        if value.abs() > Rational::one() {
            return Err(Error::OrderingOutOfRange(rational_text(&value)));
        }
        Ok(OrderingParam::Value(value))
    }

    pub fn symbol(name: impl Into<Symbol>) -> Self {
        OrderingParam::Symbol(name.into())
    }

    pub fn as_poly(&self) -> MultiPoly {
        match self {
            OrderingParam::Value(v) => MultiPoly::constant(v.clone()),
            OrderingParam::Symbol(s) => MultiPoly::symbol(s.clone()),
        }
    }

    pub fn concrete(&self) -> Option<&Rational> {
        match self {
            OrderingParam::Value(v) => Some(v),
            OrderingParam::Symbol(_) => None,
        }
    }

    pub fn is_normal(&self) -> bool {
        self.concrete().is_some_and(|v| v.is_one())
    }

    pub fn is_anti_normal(&self) -> bool {
        self.concrete().is_some_and(|v| *v == int(-1))
    }

    /// Replaces a bound symbol with its value.
    pub fn substitute(&self, bindings: &Bindings) -> Result<OrderingParam> {
        match self {
            OrderingParam::Symbol(s) => match bindings.get(s) {
                Some(v) => OrderingParam::value(v.clone()),
                None => Ok(self.clone()),
            },
            OrderingParam::Value(_) => Ok(self.clone()),
        }
    }
}

impl fmt::Display for OrderingParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrderingParam::Value(v) => f.write_str(&rational_text(v)),
            OrderingParam::Symbol(s) => write!(f, "{s}"),
        }
    }
}

/// Finite sum `Σ c_{m,n} {a†^m a^n}_σ` sharing one ordering `σ`.
///
/// Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderedPolynomial {
    ordering: OrderingParam,
    terms: BTreeMap<OrderedMonomial, MultiPoly>,
}

impl OrderedPolynomial {
    pub fn zero(ordering: OrderingParam) -> Self {
        OrderedPolynomial {
            ordering,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(ordering: OrderingParam, value: MultiPoly) -> Self {
        Self::monomial(ordering, OrderedMonomial::ONE, value)
    }

    pub fn monomial(ordering: OrderingParam, mono: OrderedMonomial, coeff: MultiPoly) -> Self {
        let mut out = Self::zero(ordering);
        out.add_term(mono, coeff);
        out
    }

    pub fn from_terms(
        ordering: OrderingParam,
        terms: impl IntoIterator<Item = (OrderedMonomial, MultiPoly)>,
    ) -> Self {
        let mut out = Self::zero(ordering);
        for (mono, coeff) in terms {
            out.add_term(mono, coeff);
        }
        out
    }

    pub fn ordering(&self) -> &OrderingParam {
        &self.ordering
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending `(m + n, m)` order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&OrderedMonomial, &MultiPoly)> {
        self.terms.iter()
    }

    pub fn coeff(&self, dag: u32, ann: u32) -> MultiPoly {
        self.terms
            .get(&OrderedMonomial::new(dag, ann))
            .cloned()
            .unwrap_or_default()
    }

    /// Largest `m + n` over the stored terms.
    pub fn degree(&self) -> u32 {
        self.terms
            .keys()
            .map(OrderedMonomial::degree)
            .max()
            .unwrap_or(0)
    }

    pub fn add_term(&mut self, mono: OrderedMonomial, coeff: MultiPoly) {
        if coeff.is_zero() {
            return;
        }
        let slot = self.terms.entry(mono).or_default();
        *slot += &coeff;
        if slot.is_zero() {
            self.terms.remove(&mono);
        }
    }

    pub fn try_add(&self, other: &OrderedPolynomial) -> Result<OrderedPolynomial> {
        self.check_ordering(other)?;
        let mut out = self.clone();
        for (mono, coeff) in &other.terms {
            out.add_term(*mono, coeff.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &OrderedPolynomial) -> Result<OrderedPolynomial> {
        self.try_add(&other.scale(&MultiPoly::constant(int(-1))))
    }

    pub fn scale(&self, factor: &MultiPoly) -> OrderedPolynomial {
        OrderedPolynomial::from_terms(
            self.ordering.clone(),
            self.terms.iter().map(|(m, c)| (*m, c * factor)),
        )
    }

    /// Relabels the ordering without touching coefficients. Only meaningful
    /// when the caller knows both labels denote the same operator, e.g. a
    /// polynomial with no term containing both `a†` and `a`.
    pub fn with_ordering(mut self, ordering: OrderingParam) -> Self {
        self.ordering = ordering;
        self
    }

    /// Substitutes symbols in the coefficients and in the ordering tag.
    pub fn substitute(&self, bindings: &Bindings) -> Result<OrderedPolynomial> {
        Ok(OrderedPolynomial::from_terms(
            self.ordering.substitute(bindings)?,
            self.terms.iter().map(|(m, c)| (*m, c.substitute(bindings))),
        ))
    }

    fn check_ordering(&self, other: &OrderedPolynomial) -> Result<()> {
        if self.ordering != other.ordering {
            return Err(Error::OrderingMismatch {
                left: self.ordering.to_string(),
                right: other.ordering.to_string(),
            });
        }
        Ok(())
    }

    /// Sum of `c · ad^m a^n` strings without the ordering wrapper.
    pub fn body_text(&self) -> String {
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(mono, coeff)| {
                if *mono == OrderedMonomial::ONE {
                    if coeff.len() == 1 {
                        alloc::format!("{coeff}")
                    } else {
                        alloc::format!("({coeff})")
                    }
                } else {
                    alloc::format!("{}{mono}", coeff.coefficient_prefix())
                }
            })
            .collect();
        parts.join(" + ")
    }
}

/// Canonical text: `N[...]` for normal, `A[...]` for anti-normal and
/// `S[σ; ...]` otherwise; the zero polynomial is `0`.
impl fmt::Display for OrderedPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let body = self.body_text();
        if self.ordering.is_normal() {
            write!(f, "N[{body}]")
        } else if self.ordering.is_anti_normal() {
            write!(f, "A[{body}]")
        } else {
            write!(f, "S[{}; {body}]", self.ordering)
        }
    }
}
