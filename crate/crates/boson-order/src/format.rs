//! Text, LaTeX and JSON renderings of ordered polynomials and operator
//! series.

use boson_core::identities::OperatorSeries;
use boson_core::kernel::rational_text;
use boson_core::{
    FormalSeries, Monomial, MultiPoly, OrderedMonomial, OrderedPolynomial, OrderingParam, Rational,
};
use num_traits::{One, Signed};
use serde::Serialize;
use serde_json::Value;

pub const SCHEMA: &str = "boson-order/1";

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, clap::ValueEnum)]
pub enum Style {
    #[default]
    Text,
    Latex,
    Json,
}

pub trait Render {
    fn render(&self, style: Style) -> String;
}

impl Render for OrderedPolynomial {
    fn render(&self, style: Style) -> String {
        match style {
            Style::Text => self.to_string(),
            Style::Latex => latex_polynomial(self),
            Style::Json => to_json(&polynomial_doc(self)),
        }
    }
}

impl Render for OperatorSeries {
    fn render(&self, style: Style) -> String {
        match style {
            Style::Text => self.to_string(),
            Style::Latex => latex_series(self),
            Style::Json => to_json(&series_doc(self)),
        }
    }
}

pub fn format<R: Render + ?Sized>(value: &R, style: Style) -> String {
    value.render(style)
}

pub(crate) fn to_json<T: Serialize>(doc: &T) -> String {
    serde_json::to_string(doc).expect("documents serialize")
}

/// Integral orderings are JSON numbers, anything else a string.
pub fn ordering_json(ordering: &OrderingParam) -> Value {
    match ordering {
        OrderingParam::Value(v) if v.is_integer() => match i64::try_from(v.to_integer()) {
            Ok(i) => Value::from(i),
            Err(_) => Value::from(rational_text(v)),
        },
        other => Value::from(other.to_string()),
    }
}

#[derive(Serialize)]
pub struct TermDoc {
    pub m: u32,
    pub n: u32,
    pub coeff: String,
}

#[derive(Serialize)]
pub struct PolynomialDoc {
    pub schema: &'static str,
    pub ordering: Value,
    pub terms: Vec<TermDoc>,
}

pub fn polynomial_doc(p: &OrderedPolynomial) -> PolynomialDoc {
    PolynomialDoc {
        schema: SCHEMA,
        ordering: ordering_json(p.ordering()),
        terms: p
            .terms()
            .rev()
            .map(|(mono, c)| TermDoc {
                m: mono.dag,
                n: mono.ann,
                coeff: c.to_string(),
            })
            .collect(),
    }
}

#[derive(Serialize)]
pub struct SeriesTermDoc {
    pub m: u32,
    pub n: u32,
    pub series: Vec<String>,
}

#[derive(Serialize)]
pub struct SeriesDoc {
    pub schema: &'static str,
    pub ordering: Value,
    pub order: usize,
    pub terms: Vec<SeriesTermDoc>,
}

pub fn series_doc(s: &OperatorSeries) -> SeriesDoc {
    SeriesDoc {
        schema: SCHEMA,
        ordering: ordering_json(s.ordering()),
        order: s.order(),
        terms: s
            .terms()
            .map(|(mono, series)| SeriesTermDoc {
                m: mono.dag,
                n: mono.ann,
                series: series.coeffs().iter().map(ToString::to_string).collect(),
            })
            .collect(),
    }
}

pub fn latex_rational(v: &Rational) -> String {
    if v.is_integer() {
        v.to_integer().to_string()
    } else {
        let sign = if v.is_negative() { "-" } else { "" };
        format!("{sign}\\frac{{{}}}{{{}}}", v.numer().abs(), v.denom())
    }
}

fn latex_monomial(m: &Monomial) -> String {
    m.factors()
        .map(|(s, e)| match e {
            1 => s.to_string(),
            _ => format!("{s}^{{{e}}}"),
        })
        .collect::<Vec<_>>()
        .join(" ")
}

/// Signed pieces joined as `a + b - c`.
fn join_signed(pieces: &[(bool, String)]) -> String {
    let mut out = String::new();
    for (i, (negative, text)) in pieces.iter().enumerate() {
        match (i, negative) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        out.push_str(text);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Terms of `p` with the sign split off and `trailer` appended to each.
fn poly_pieces(p: &MultiPoly, trailer: &str) -> Vec<(bool, String)> {
    p.terms()
        .rev()
        .map(|(m, c)| {
            let magnitude = c.abs();
            let mut parts = Vec::new();
            if !magnitude.is_one() || (m.is_one() && trailer.is_empty()) {
                parts.push(latex_rational(&magnitude));
            }
            if !m.is_one() {
                parts.push(latex_monomial(m));
            }
            if !trailer.is_empty() {
                parts.push(trailer.to_string());
            }
            (c.is_negative(), parts.join(" "))
        })
        .collect()
}

pub fn latex_multipoly(p: &MultiPoly) -> String {
    join_signed(&poly_pieces(p, ""))
}

fn latex_ordering(ordering: &OrderingParam) -> String {
    match ordering {
        OrderingParam::Value(v) => latex_rational(v),
        OrderingParam::Symbol(s) => s.to_string(),
    }
}

fn latex_power(letter: &str, exp: u32) -> String {
    match exp {
        0 => String::new(),
        1 => letter.to_string(),
        _ => format!("{letter}^{{{exp}}}"),
    }
}

fn latex_operator(mono: &OrderedMonomial, ordering: &OrderingParam) -> String {
    let dag = match mono.dag {
        0 => String::new(),
        1 => "a^{\\dagger}".to_string(),
        m => format!("a^{{\\dagger {m}}}"),
    };
    let ann = latex_power("a", mono.ann);
    let join = |first: &str, second: &str| {
        [first, second]
            .iter()
            .filter(|s| !s.is_empty())
            .copied()
            .collect::<Vec<_>>()
            .join(" ")
    };
    if ordering.is_normal() {
        format!(":{}:", join(&dag, &ann))
    } else if ordering.is_anti_normal() {
        format!("\\vdots {} \\vdots", join(&ann, &dag))
    } else {
        format!(
            "\\{{{}\\}}_{{{}}}",
            join(&dag, &ann),
            latex_ordering(ordering)
        )
    }
}

fn coefficient_pieces(coeff: &MultiPoly, operator: &str) -> Vec<(bool, String)> {
    if coeff.len() == 1 {
        poly_pieces(coeff, operator)
    } else {
        vec![(
            false,
            format!("\\left({}\\right) {operator}", latex_multipoly(coeff)),
        )]
    }
}

/// `:a^{\dagger} a:` for normal, `\vdots a a^{\dagger} \vdots` for
/// anti-normal and `\{a^{\dagger} a\}_{s}` otherwise.
pub fn latex_polynomial(p: &OrderedPolynomial) -> String {
    let mut pieces = Vec::new();
    for (mono, coeff) in p.terms().rev() {
        if *mono == OrderedMonomial::ONE {
            pieces.extend(poly_pieces(coeff, ""));
        } else {
            pieces.extend(coefficient_pieces(
                coeff,
                &latex_operator(mono, p.ordering()),
            ));
        }
    }
    join_signed(&pieces)
}

fn latex_formal(series: &FormalSeries) -> String {
    let mut pieces = Vec::new();
    for (j, c) in series.coeffs().iter().enumerate() {
        let lambda = match j {
            0 => String::new(),
            1 => "\\lambda".to_string(),
            _ => format!("\\lambda^{{{j}}}"),
        };
        if c.len() == 1 || lambda.is_empty() {
            pieces.extend(poly_pieces(c, &lambda));
        } else if !c.is_zero() {
            pieces.push((
                false,
                format!("\\left({}\\right) {lambda}", latex_multipoly(c)),
            ));
        }
    }
    join_signed(&pieces)
}

pub fn latex_series(s: &OperatorSeries) -> String {
    let mut pieces = Vec::new();
    for (mono, series) in s.terms().rev() {
        if series.is_zero() {
            continue;
        }
        let body = format!("\\left({}\\right)", latex_formal(series));
        let text = if *mono == OrderedMonomial::ONE {
            body
        } else {
            format!("{body} {}", latex_operator(mono, s.ordering()))
        };
        pieces.push((false, text));
    }
    pieces.push((false, format!("O(\\lambda^{{{}}})", s.order() + 1)));
    join_signed(&pieces)
}
