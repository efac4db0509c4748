use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_traits::{One, Signed, Zero};

use super::{is_unit_magnitude, scalar_text, Rational};
use crate::error::{Error, Result};

/// Name of a polynomial variable such as `s`, `t` or `s2`. Symbols compare by
/// name.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Symbol(String);

impl Symbol {
    pub fn new(name: impl Into<String>) -> Self {
        Symbol(name.into())
    }

    pub fn name(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for Symbol {
    fn from(name: &str) -> Self {
        Symbol::new(name)
    }
}

/// Values assigned to symbols for evaluation or substitution.
pub type Bindings = BTreeMap<Symbol, Rational>;

/// Power product of symbols. Zero exponents are never stored, so the empty
/// map is the monomial `1`.
///
/// Ordering is graded lexicographic: total degree first, then the exponent of
/// the alphabetically first symbol where the two differ.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Monomial(BTreeMap<Symbol, u32>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(BTreeMap::new())
    }

    pub fn var(symbol: Symbol) -> Self {
        Self::power(symbol, 1)
    }

    pub fn power(symbol: Symbol, exp: u32) -> Self {
        let mut map = BTreeMap::new();
        if exp > 0 {
            map.insert(symbol, exp);
        }
        Monomial(map)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.values().sum()
    }

    pub fn exponent(&self, symbol: &Symbol) -> u32 {
        self.0.get(symbol).copied().unwrap_or(0)
    }

    pub fn factors(&self) -> impl Iterator<Item = (&Symbol, u32)> {
        self.0.iter().map(|(s, e)| (s, *e))
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = self.0.clone();
        for (sym, exp) in &other.0 {
            *out.entry(sym.clone()).or_insert(0) += exp;
        }
        Monomial(out)
    }

    fn lex_cmp(&self, other: &Monomial) -> Ordering {
        let mut lhs = self.0.iter().peekable();
        let mut rhs = other.0.iter().peekable();
        loop {
            match (lhs.peek(), rhs.peek()) {
                (None, None) => return Ordering::Equal,
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
                (Some((ls, le)), Some((rs, re))) => match ls.cmp(rs) {
                    // the left symbol is absent on the right: exponent > 0 vs 0
                    Ordering::Less => return Ordering::Greater,
                    Ordering::Greater => return Ordering::Less,
                    Ordering::Equal => {
                        let ord = le.cmp(re);
                        if ord != Ordering::Equal {
                            return ord;
                        }
                        lhs.next();
                        rhs.next();
                    }
                },
            }
        }
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.lex_cmp(other))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        for (i, (sym, exp)) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str("*")?;
            }
            if *exp == 1 {
                write!(f, "{sym}")?;
            } else {
                write!(f, "{sym}^{exp}")?;
            }
        }
        Ok(())
    }
}

/// Multivariate polynomial with exact rational coefficients.
///
/// The term map never holds a zero coefficient; the zero polynomial has no
/// terms.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    terms: BTreeMap<Monomial, Rational>,
}

impl MultiPoly {
    pub fn zero() -> Self {
        MultiPoly::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(value: Rational) -> Self {
        Self::term(Monomial::one(), value)
    }

    pub fn symbol(symbol: impl Into<Symbol>) -> Self {
        Self::term(Monomial::var(symbol.into()), Rational::one())
    }

    pub fn term(monomial: Monomial, coeff: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(monomial, coeff);
        }
        MultiPoly { terms }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut out = MultiPoly::zero();
        for (mono, coeff) in terms {
            out.add_term(mono, coeff);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_one())
    }

    /// The value of a polynomial without symbols.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, monomial: &Monomial) -> Rational {
        self.terms
            .get(monomial)
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn symbols(&self) -> BTreeSet<Symbol> {
        self.terms
            .keys()
            .flat_map(|m| m.factors().map(|(s, _)| s.clone()))
            .collect()
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn add_term(&mut self, monomial: Monomial, coeff: Rational) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(monomial) {
            alloc::collections::btree_map::Entry::Vacant(slot) => {
                slot.insert(coeff);
            }
            alloc::collections::btree_map::Entry::Occupied(mut slot) => {
                *slot.get_mut() += coeff;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    pub fn scale(&self, factor: &Rational) -> MultiPoly {
        if factor.is_zero() {
            return MultiPoly::zero();
        }
        MultiPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c * factor))
                .collect(),
        }
    }

    pub fn pow(&self, exp: u32) -> MultiPoly {
        let mut acc = MultiPoly::one();
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    /// Exact value under a full assignment of the symbols.
    pub fn eval(&self, bindings: &Bindings) -> Result<Rational> {
        let mut total = Rational::zero();
        for (mono, coeff) in &self.terms {
            let mut value = coeff.clone();
            for (sym, exp) in mono.factors() {
                let x = bindings
                    .get(sym)
                    .ok_or_else(|| Error::MissingBinding(sym.name().to_string()))?;
                value *= num_traits::pow(x.clone(), exp as usize);
            }
            total += value;
        }
        Ok(total)
    }

    /// Replace the bound symbols by their values; unbound symbols stay.
    pub fn substitute(&self, bindings: &Bindings) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (mono, coeff) in &self.terms {
            let mut value = coeff.clone();
            let mut rest = BTreeMap::new();
            for (sym, exp) in mono.factors() {
                match bindings.get(sym) {
                    Some(x) => value *= num_traits::pow(x.clone(), exp as usize),
                    None => {
                        rest.insert(sym.clone(), exp);
                    }
                }
            }
            out.add_term(Monomial(rest), value);
        }
        out
    }

    fn is_single_term(&self) -> bool {
        self.terms.len() == 1
    }

    /// Text used when this polynomial multiplies something else: omitted for
    /// `1`, a bare `-` for `-1`, parenthesised when it has several terms.
    pub fn coefficient_prefix(&self) -> String {
        if self.is_one() {
            return String::new();
        }
        if let Some(c) = self.as_constant() {
            if is_unit_magnitude(&c) {
                return "-".to_string();
            }
        }
        if self.is_single_term() {
            alloc::format!("{self}*")
        } else {
            alloc::format!("({self})*")
        }
    }
}

fn term_text(mono: &Monomial, coeff: &Rational) -> String {
    if mono.is_one() {
        return scalar_text(coeff);
    }
    if coeff.is_one() {
        alloc::format!("{mono}")
    } else if is_unit_magnitude(coeff) && coeff.is_negative() {
        alloc::format!("-{mono}")
    } else {
        alloc::format!("{}*{mono}", scalar_text(coeff))
    }
}

/// Canonical rendering: terms in descending graded-lex order joined by
/// `" + "`, e.g. `(1/2)*t + (-1/2)`.
impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(m, c)| term_text(m, c))
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

impl From<Rational> for MultiPoly {
    fn from(value: Rational) -> Self {
        MultiPoly::constant(value)
    }
}

impl From<Symbol> for MultiPoly {
    fn from(symbol: Symbol) -> Self {
        MultiPoly::symbol(symbol)
    }
}

impl Zero for MultiPoly {
    fn zero() -> Self {
        MultiPoly::zero()
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for MultiPoly {
    fn one() -> Self {
        MultiPoly::one()
    }
}

impl AddAssign<&MultiPoly> for MultiPoly {
    fn add_assign(&mut self, rhs: &MultiPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl SubAssign<&MultiPoly> for MultiPoly {
    fn sub_assign(&mut self, rhs: &MultiPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c.clone());
        }
    }
}

impl Add<&MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub<&MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Mul<&MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (lm, lc) in &self.terms {
            for (rm, rc) in &rhs.terms {
                out.add_term(lm.mul(rm), lc * rc);
            }
        }
        out
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($($trait:ident :: $method:ident),*) => {$(
        impl $trait<MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: MultiPoly) -> MultiPoly {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: &MultiPoly) -> MultiPoly {
                (&self).$method(rhs)
            }
        }
    )*};
}

forward_owned!(Add::add, Sub::sub, Mul::mul);

impl AddAssign<MultiPoly> for MultiPoly {
    fn add_assign(&mut self, rhs: MultiPoly) {
        *self += &rhs;
    }
}

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::{int, rat};
    use alloc::string::ToString;

    fn s() -> MultiPoly {
        MultiPoly::symbol("s")
    }

    fn t() -> MultiPoly {
        MultiPoly::symbol("t")
    }

    fn c(num: i64, den: i64) -> MultiPoly {
        MultiPoly::constant(rat(num, den))
    }

    #[test]
    fn absorbing_zero() {
        let p = &s() + &MultiPoly::one();
        assert!((&p * &MultiPoly::zero()).is_zero());
    }

    #[test]
    fn difference_of_squares() {
        let lhs = &(&s() - &MultiPoly::one()) * &(&s() + &MultiPoly::one());
        let rhs = &s().pow(2) - &MultiPoly::one();
        assert_eq!(lhs, rhs);
        assert_eq!(lhs.to_string(), "s^2 + -1");
    }

    #[test]
    fn cross_block_factors_sum_to_t() {
        let lhs = &(&t() - &MultiPoly::one()).scale(&rat(1, 2))
            + &(&t() + &MultiPoly::one()).scale(&rat(1, 2));
        assert_eq!(lhs, t());
    }

    #[test]
    fn eval_examples() {
        let mut b = Bindings::new();
        b.insert("t".into(), int(-1));
        let p = (&t() + &MultiPoly::one()).scale(&rat(1, 2));
        assert_eq!(p.eval(&b).unwrap(), int(0));

        let mut b = Bindings::new();
        b.insert("s".into(), int(1));
        let p = (&s() - &MultiPoly::one()).scale(&rat(1, 2));
        assert_eq!(p.eval(&b).unwrap(), int(0));

        let mut b = Bindings::new();
        b.insert("s".into(), int(0));
        let p = &(&s() + &MultiPoly::one()).scale(&rat(1, 2))
            * &(&s() - &MultiPoly::one()).scale(&rat(1, 2));
        assert_eq!(p.eval(&b).unwrap(), rat(-1, 4));
    }

    #[test]
    fn eval_reports_missing_symbol() {
        let err = (&s() * &t()).eval(&Bindings::new()).unwrap_err();
        assert_eq!(err, Error::MissingBinding("s".to_string()));
    }

    #[test]
    fn partial_substitution_keeps_free_symbols() {
        let mut b = Bindings::new();
        b.insert("s".into(), int(2));
        let p = &(&s() * &t()) + &s();
        assert_eq!(p.substitute(&b), &t().scale(&int(2)) + &c(2, 1));
    }

    #[test]
    fn canonical_text() {
        let p = &t().scale(&rat(1, 2)) + &c(-1, 2);
        assert_eq!(p.to_string(), "(1/2)*t + (-1/2)");
        assert_eq!(MultiPoly::zero().to_string(), "0");
        let q = &(&(&s() * &t()) + &s().pow(2).scale(&int(3))) - &t();
        assert_eq!(q.to_string(), "3*s^2 + s*t + -t");
    }

    #[test]
    fn graded_lex_order() {
        let s1 = Monomial::var("s".into());
        let t1 = Monomial::var("t".into());
        let s2 = Monomial::power("s".into(), 2);
        assert!(s1 > t1);
        assert!(t1 > Monomial::one());
        assert!(s2 > s1);
        assert!(Monomial::power("t".into(), 2) > s1);
    }
}
