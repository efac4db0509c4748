//! Closed forms for powers and the exponential of the number operator
//! `a†a`, in normal and anti-normal order.
//!
//! - `(a†a)^n = Σ_k S(n,k) a†^k a^k`
//! - `(a†a)^n = Σ_{k=1}^{n+1} (-1)^(n+1-k) S(n+1,k) a^(k-1) a†^(k-1)`
//! - `exp(λ a†a) = :exp((e^λ - 1) a†a):`
//! - `exp(λ a†a) = e^(-λ) ⋮exp((1 - e^(-λ)) a†a)⋮`
//!
//! The exponentials are carried as [`OperatorSeries`], exact through a chosen
//! power of `λ`.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_bigint::BigInt;

use crate::combinatorics::{bell_poly, factorial, StirlingTable};
use crate::error::{Error, Result};
use crate::kernel::{int, FormalSeries, MultiPoly, Rational};
use crate::operator::{
    CanonicalOrder, OrderedMonomial, OrderedPolynomial, OrderingParam, Rewriter, Word,
};

fn sign(exp: usize) -> Rational {
    if exp.is_multiple_of(2) {
        int(1)
    } else {
        int(-1)
    }
}

fn integer(value: num_bigint::BigUint) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

/// `(a†a)^n` in normal order: `(k, k) ↦ S(n, k)`.
pub fn number_power_normal(n: usize) -> OrderedPolynomial {
    let table = StirlingTable::new(n);
    OrderedPolynomial::from_terms(
        OrderingParam::normal(),
        (0..=n).map(|k| {
            (
                OrderedMonomial::new(k as u32, k as u32),
                MultiPoly::constant(integer(table.get(n, k))),
            )
        }),
    )
}

/// `(a†a)^n` in anti-normal order: `(k-1, k-1) ↦ (-1)^(n+1-k) S(n+1, k)`.
pub fn number_power_antinormal(n: usize) -> OrderedPolynomial {
    let table = StirlingTable::new(n + 1);
    OrderedPolynomial::from_terms(
        OrderingParam::anti_normal(),
        (1..=n + 1).map(|k| {
            (
                OrderedMonomial::new(k as u32 - 1, k as u32 - 1),
                MultiPoly::constant(sign(n + 1 - k) * integer(table.get(n + 1, k))),
            )
        }),
    )
}

/// `(a†a)^n` anti-normally ordered via the Bell polynomial:
/// `(-1)^(n+1) ⋮ B(n+1, -a†a) / (a†a) ⋮`.
///
/// Inside the ordering symbol `(a†a)^k` is the monomial `a^k a†^k`; dividing
/// by `a†a` lowers `(k, k)` to `(k-1, k-1)` and is only defined when the
/// Bell polynomial has no constant term.
pub fn antinormal_bell_form(n: usize) -> Result<OrderedPolynomial> {
    let bell = bell_poly(n + 1);
    let outer = sign(n + 1);
    let expanded = OrderedPolynomial::from_terms(
        OrderingParam::anti_normal(),
        bell.coeffs().iter().enumerate().map(|(k, c)| {
            (
                OrderedMonomial::new(k as u32, k as u32),
                MultiPoly::constant(&outer * sign(k) * integer(c.clone())),
            )
        }),
    );
    cancel_number_operator(&expanded)
}

/// Removes one factor `a†a` from every term of an ordered polynomial.
fn cancel_number_operator(p: &OrderedPolynomial) -> Result<OrderedPolynomial> {
    let mut out = OrderedPolynomial::zero(p.ordering().clone());
    for (mono, coeff) in p.terms() {
        if *mono == OrderedMonomial::ONE {
            return Err(Error::ConstantTermObstruction);
        }
        if mono.dag == 0 || mono.ann == 0 {
            return Err(Error::NotDivisible {
                dag: mono.dag,
                ann: mono.ann,
            });
        }
        out.add_term(
            OrderedMonomial::new(mono.dag - 1, mono.ann - 1),
            coeff.clone(),
        );
    }
    Ok(out)
}

/// `Σ_{m,n} c_{m,n}(λ) {a†^m a^n}` with every coefficient a series in `λ`
/// truncated at the same order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OperatorSeries {
    order: usize,
    ordering: OrderingParam,
    terms: BTreeMap<OrderedMonomial, FormalSeries>,
}

impl OperatorSeries {
    pub fn new(order: usize, ordering: OrderingParam) -> Self {
        OperatorSeries {
            order,
            ordering,
            terms: BTreeMap::new(),
        }
    }

    pub fn insert(&mut self, mono: OrderedMonomial, series: FormalSeries) -> Result<()> {
        if series.order() != self.order {
            return Err(Error::OrderMismatch {
                left: self.order,
                right: series.order(),
            });
        }
        if series.is_zero() {
            self.terms.remove(&mono);
        } else {
            self.terms.insert(mono, series);
        }
        Ok(())
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn ordering(&self) -> &OrderingParam {
        &self.ordering
    }

    pub fn term(&self, dag: u32, ann: u32) -> Option<&FormalSeries> {
        self.terms.get(&OrderedMonomial::new(dag, ann))
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&OrderedMonomial, &FormalSeries)> {
        self.terms.iter()
    }

    /// The ordered polynomial multiplying `λ^power`.
    pub fn coefficient(&self, power: usize) -> OrderedPolynomial {
        OrderedPolynomial::from_terms(
            self.ordering.clone(),
            self.terms.iter().map(|(m, s)| (*m, s.coeff(power).clone())),
        )
    }
}

impl fmt::Display for OperatorSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for j in 0..=self.order {
            writeln!(f, "lambda^{j}: {}", self.coefficient(j))?;
        }
        Ok(())
    }
}

/// `exp(λ a†a)` in normal order: `(k, k)` carries `(e^λ - 1)^k / k!`.
pub fn exp_number_normal(order: usize) -> OperatorSeries {
    let shifted = FormalSeries::exp_linear(order, &int(1))
        .try_sub(&FormalSeries::one(order))
        .expect("same order");
    let mut out = OperatorSeries::new(order, OrderingParam::normal());
    // (e^λ - 1)^k starts at λ^k, so k > order contributes nothing
    for k in 0..=order {
        let series = shifted
            .pow(k as u32)
            .scale_rational(&integer(factorial(k)).recip());
        out.insert(OrderedMonomial::new(k as u32, k as u32), series)
            .expect("same order");
    }
    out
}

/// `exp(λ a†a)` in anti-normal order: `(k, k)` carries
/// `e^(-λ) (1 - e^(-λ))^k / k!`.
pub fn exp_number_antinormal(order: usize) -> OperatorSeries {
    let decay = FormalSeries::exp_linear(order, &int(-1));
    let rise = FormalSeries::one(order)
        .try_sub(&decay)
        .expect("same order");
    let mut out = OperatorSeries::new(order, OrderingParam::anti_normal());
    for k in 0..=order {
        let series = decay
            .try_mul(&rise.pow(k as u32))
            .expect("same order")
            .scale_rational(&integer(factorial(k)).recip());
        out.insert(OrderedMonomial::new(k as u32, k as u32), series)
            .expect("same order");
    }
    out
}

/// Named identities with a self-check report.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IdentityName {
    NormalExp,
    AntiExp,
    NumberPowerNormal,
    NumberPowerAnti,
    BellForm,
}

impl IdentityName {
    pub const ALL: [IdentityName; 5] = [
        IdentityName::NormalExp,
        IdentityName::AntiExp,
        IdentityName::NumberPowerNormal,
        IdentityName::NumberPowerAnti,
        IdentityName::BellForm,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            IdentityName::NormalExp => "normal-exp",
            IdentityName::AntiExp => "anti-exp",
            IdentityName::NumberPowerNormal => "number-power-normal",
            IdentityName::NumberPowerAnti => "number-power-anti",
            IdentityName::BellForm => "bell-form",
        }
    }

    /// Series identities take a truncation order, the others a power `n`.
    pub fn takes_order(self) -> bool {
        matches!(self, IdentityName::NormalExp | IdentityName::AntiExp)
    }
}

impl fmt::Display for IdentityName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for IdentityName {
    type Err = String;

    fn from_str(s: &str) -> core::result::Result<Self, String> {
        IdentityName::ALL
            .into_iter()
            .find(|n| n.as_str() == s)
            .ok_or_else(|| alloc::format!("unknown identity `{s}`"))
    }
}

/// One compared coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoefficientCheck {
    pub label: String,
    pub expected: String,
    pub computed: String,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityReport {
    pub name: IdentityName,
    pub size: usize,
    pub checks: Vec<CoefficientCheck>,
}

impl IdentityReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

fn compare_polynomials(
    expected: &OrderedPolynomial,
    computed: &OrderedPolynomial,
) -> Vec<CoefficientCheck> {
    let mut keys: Vec<OrderedMonomial> = expected
        .terms()
        .chain(computed.terms())
        .map(|(m, _)| *m)
        .collect();
    keys.sort();
    keys.dedup();
    let mut checks: Vec<CoefficientCheck> = keys
        .into_iter()
        .rev()
        .map(|m| {
            let e = expected.coeff(m.dag, m.ann);
            let c = computed.coeff(m.dag, m.ann);
            CoefficientCheck {
                label: m.to_string(),
                expected: e.to_string(),
                computed: c.to_string(),
                pass: e == c,
            }
        })
        .collect();
    if expected.ordering() != computed.ordering() {
        checks.push(CoefficientCheck {
            label: "ordering".to_string(),
            expected: expected.ordering().to_string(),
            computed: computed.ordering().to_string(),
            pass: false,
        });
    }
    checks
}

fn compare_series(
    series: &OperatorSeries,
    expected: impl Fn(usize, usize) -> Rational,
) -> Vec<CoefficientCheck> {
    let order = series.order();
    let mut checks = Vec::new();
    for n in 0..=order {
        let scale = integer(factorial(n));
        for k in 0..=order {
            let computed = series
                .term(k as u32, k as u32)
                .map(|s| s.coeff(n).scale(&scale))
                .unwrap_or_default();
            let want = MultiPoly::constant(expected(n, k));
            checks.push(CoefficientCheck {
                label: alloc::format!("n={n} k={k}"),
                pass: computed == want,
                expected: want.to_string(),
                computed: computed.to_string(),
            });
        }
    }
    checks
}

/// Checks a named identity against an independent route: the rewriting
/// oracle for powers of `a†a`, Stirling numbers for the series forms, and
/// the Stirling closed form for the Bell-polynomial form.
///
/// `size` is the power `n` or the truncation order, see
/// [`IdentityName::takes_order`].
pub fn verify(name: IdentityName, size: usize) -> Result<IdentityReport> {
    let number_word = || Word::normal(1, 1).repeat(size);
    let rewriter = Rewriter::with_cap((2 * size).max(Rewriter::DEFAULT_CAP));
    let checks = match name {
        IdentityName::NumberPowerNormal => compare_polynomials(
            &rewriter.order(&number_word(), CanonicalOrder::Normal)?,
            &number_power_normal(size),
        ),
        IdentityName::NumberPowerAnti => compare_polynomials(
            &rewriter.order(&number_word(), CanonicalOrder::AntiNormal)?,
            &number_power_antinormal(size),
        ),
        IdentityName::BellForm => {
            compare_polynomials(&number_power_antinormal(size), &antinormal_bell_form(size)?)
        }
        IdentityName::NormalExp => {
            let table = StirlingTable::new(size + 1);
            compare_series(&exp_number_normal(size), |n, k| integer(table.get(n, k)))
        }
        IdentityName::AntiExp => {
            let table = StirlingTable::new(size + 1);
            compare_series(&exp_number_antinormal(size), |n, k| {
                sign(n + k) * integer(table.get(n + 1, k + 1))
            })
        }
    };
    Ok(IdentityReport { name, size, checks })
}
