//! Byte-level lexer and recursive-descent parser for operator expressions.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := '-'* factor ('*'? factor)*
//! factor := primary ('^' nat)*
//! primary:= scalar | symbol | 'a' | 'ad' | 'a†' | block | '(' expr ')'
//! block  := ('N' | 'A' | 'W') '[' expr ']' | 'S[' param ';' expr ']'
//! param  := '-'? scalar | symbol
//! scalar := INT ('/' INT)?
//! ```
//!
//! Juxtaposition is multiplication and keeps operator order.

use std::fmt;

use boson_core::{Letter, OrderingParam, Rational, Symbol};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde_json::{json, Value};
use thiserror::Error;

/// Deepest nesting of parentheses, blocks and unary minus accepted.
pub const MAX_DEPTH: usize = 128;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Ast {
    Sum(Vec<Ast>),
    Product(Vec<Ast>),
    Power(Box<Ast>, u32),
    LetterRef(Letter),
    OrderedBlock(Box<Ast>, OrderingParam),
    ScalarLit(Rational),
    SymbolRef(Symbol),
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("syntax error at byte {offset}: expected {}, found {found}", expected.join(" | "))]
pub struct SyntaxError {
    pub offset: usize,
    pub expected: Vec<&'static str>,
    pub found: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum BlockKind {
    Normal,
    Anti,
    Weyl,
    General,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Letter(Letter),
    Open(BlockKind),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    RBracket,
    Semi,
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Int(v) => write!(f, "`{v}`"),
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Letter(l) => write!(f, "`{l}`"),
            Tok::Open(kind) => f.write_str(match kind {
                BlockKind::Normal => "`N[`",
                BlockKind::Anti => "`A[`",
                BlockKind::Weyl => "`W[`",
                BlockKind::General => "`S[`",
            }),
            Tok::Plus => f.write_str("`+`"),
            Tok::Minus => f.write_str("`-`"),
            Tok::Star => f.write_str("`*`"),
            Tok::Slash => f.write_str("`/`"),
            Tok::Caret => f.write_str("`^`"),
            Tok::LParen => f.write_str("`(`"),
            Tok::RParen => f.write_str("`)`"),
            Tok::RBracket => f.write_str("`]`"),
            Tok::Semi => f.write_str("`;`"),
            Tok::End => f.write_str("end of input"),
        }
    }
}

const DAGGER: &[u8] = "†".as_bytes();

fn lex(input: &[u8]) -> Result<Vec<(Tok, usize)>, SyntaxError> {
    let mut out = Vec::new();
    let mut i = 0;
    while i < input.len() {
        let start = i;
        let b = input[i];
        let tok = match b {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'0'..=b'9' => {
                while i < input.len() && input[i].is_ascii_digit() {
                    i += 1;
                }
                let digits = std::str::from_utf8(&input[start..i]).expect("ascii digits");
                Tok::Int(digits.parse().expect("decimal digits"))
            }
            b'A'..=b'Z' | b'a'..=b'z' | b'_' => {
                while i < input.len() && (input[i].is_ascii_alphanumeric() || input[i] == b'_') {
                    i += 1;
                }
                let word = std::str::from_utf8(&input[start..i]).expect("ascii identifier");
                match word {
                    "a" if input[i..].starts_with(DAGGER) => {
                        i += DAGGER.len();
                        Tok::Letter(Letter::Creation)
                    }
                    "a" => Tok::Letter(Letter::Annihilation),
                    "ad" => Tok::Letter(Letter::Creation),
                    "N" | "A" | "W" | "S" if input.get(i) == Some(&b'[') => {
                        i += 1;
                        Tok::Open(match word {
                            "N" => BlockKind::Normal,
                            "A" => BlockKind::Anti,
                            "W" => BlockKind::Weyl,
                            _ => BlockKind::General,
                        })
                    }
                    _ => Tok::Ident(word.to_string()),
                }
            }
            _ => {
                i += 1;
                match b {
                    b'+' => Tok::Plus,
                    b'-' => Tok::Minus,
                    b'*' => Tok::Star,
                    b'/' => Tok::Slash,
                    b'^' => Tok::Caret,
                    b'(' => Tok::LParen,
                    b')' => Tok::RParen,
                    b']' => Tok::RBracket,
                    b';' => Tok::Semi,
                    _ => {
                        let found = match b {
                            b'[' => "`[`".to_string(),
                            0x21..=0x7e => format!("`{}`", b as char),
                            _ => format!("byte 0x{b:02x}"),
                        };
                        return Err(SyntaxError {
                            offset: start,
                            expected: vec!["token"],
                            found,
                        });
                    }
                }
            }
        };
        out.push((tok, start));
    }
    out.push((Tok::End, input.len()));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    depth: usize,
}

const FACTOR_START: &[&str] = &["number", "symbol", "`a`", "`ad`", "block", "`(`"];

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let tok = self.toks[self.pos].0.clone();
        if tok != Tok::End {
            self.pos += 1;
        }
        tok
    }

    fn error(&self, expected: &[&'static str]) -> SyntaxError {
        SyntaxError {
            offset: self.offset(),
            expected: expected.to_vec(),
            found: self.peek().to_string(),
        }
    }

    fn expect(&mut self, tok: Tok, name: &'static str) -> Result<(), SyntaxError> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            Err(self.error(&[name]))
        }
    }

    fn descend(&mut self) -> Result<(), SyntaxError> {
        self.depth += 1;
        if self.depth > MAX_DEPTH {
            return Err(SyntaxError {
                offset: self.offset(),
                expected: vec!["shallower nesting"],
                found: format!("nesting deeper than {MAX_DEPTH}"),
            });
        }
        Ok(())
    }

    fn expr(&mut self) -> Result<Ast, SyntaxError> {
        let mut terms = vec![self.term()?];
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    terms.push(self.term()?);
                }
                Tok::Minus => {
                    self.bump();
                    terms.push(negate(self.term()?));
                }
                _ => break,
            }
        }
        Ok(if terms.len() == 1 {
            terms.pop().expect("one term")
        } else {
            Ast::Sum(terms)
        })
    }

    fn term(&mut self) -> Result<Ast, SyntaxError> {
        if *self.peek() == Tok::Minus {
            self.bump();
            self.descend()?;
            let inner = self.term()?;
            self.depth -= 1;
            return Ok(negate(inner));
        }
        let mut factors = vec![self.factor()?];
        loop {
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    factors.push(self.factor()?);
                }
                Tok::Int(_) | Tok::Ident(_) | Tok::Letter(_) | Tok::Open(_) | Tok::LParen => {
                    factors.push(self.factor()?);
                }
                _ => break,
            }
        }
        Ok(if factors.len() == 1 {
            factors.pop().expect("one factor")
        } else {
            Ast::Product(factors)
        })
    }

    fn factor(&mut self) -> Result<Ast, SyntaxError> {
        let mut base = self.primary()?;
        while *self.peek() == Tok::Caret {
            self.bump();
            let exp = match self.peek() {
                Tok::Int(v) => u32::try_from(v.clone()).ok(),
                _ => None,
            };
            match exp {
                Some(e) => {
                    self.bump();
                    base = Ast::Power(Box::new(base), e);
                }
                None => return Err(self.error(&["exponent"])),
            }
        }
        Ok(base)
    }

    fn scalar(&mut self) -> Result<Rational, SyntaxError> {
        let num = match self.bump() {
            Tok::Int(v) => v,
            _ => unreachable!("caller checked for an integer"),
        };
        if *self.peek() != Tok::Slash {
            return Ok(Rational::from_integer(num));
        }
        self.bump();
        match self.peek().clone() {
            Tok::Int(den) if !den.is_zero() => {
                self.bump();
                Ok(Rational::new(num, den))
            }
            Tok::Int(_) => Err(self.error(&["nonzero denominator"])),
            _ => Err(self.error(&["denominator"])),
        }
    }

    fn primary(&mut self) -> Result<Ast, SyntaxError> {
        match self.peek().clone() {
            Tok::Int(_) => Ok(Ast::ScalarLit(self.scalar()?)),
            Tok::Ident(name) => {
                self.bump();
                Ok(Ast::SymbolRef(Symbol::new(name)))
            }
            Tok::Letter(l) => {
                self.bump();
                Ok(Ast::LetterRef(l))
            }
            Tok::LParen => {
                self.bump();
                self.descend()?;
                let inner = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                self.depth -= 1;
                Ok(inner)
            }
            Tok::Open(kind) => {
                self.bump();
                self.descend()?;
                let ordering = match kind {
                    BlockKind::Normal => OrderingParam::normal(),
                    BlockKind::Anti => OrderingParam::anti_normal(),
                    BlockKind::Weyl => OrderingParam::weyl(),
                    BlockKind::General => {
                        let p = self.param()?;
                        self.expect(Tok::Semi, "`;`")?;
                        p
                    }
                };
                let inner = self.expr()?;
                self.expect(Tok::RBracket, "`]`")?;
                self.depth -= 1;
                Ok(Ast::OrderedBlock(Box::new(inner), ordering))
            }
            _ => Err(self.error(FACTOR_START)),
        }
    }

    fn param(&mut self) -> Result<OrderingParam, SyntaxError> {
        let at = self.offset();
        let negative = *self.peek() == Tok::Minus;
        if negative {
            self.bump();
        }
        match self.peek().clone() {
            Tok::Int(_) => {
                let mut v = self.scalar()?;
                if negative {
                    v = -v;
                }
                OrderingParam::value(v.clone()).map_err(|_| SyntaxError {
                    offset: at,
                    expected: vec!["ordering in [-1, 1]"],
                    found: format!("`{}`", boson_core::kernel::rational_text(&v)),
                })
            }
            Tok::Ident(name) if !negative => {
                self.bump();
                Ok(OrderingParam::symbol(name.as_str()))
            }
            _ => Err(self.error(if negative {
                &["number"]
            } else {
                &["number", "symbol", "`-`"]
            })),
        }
    }
}

fn negate(ast: Ast) -> Ast {
    match ast {
        Ast::ScalarLit(v) => Ast::ScalarLit(-v),
        Ast::Product(mut factors) => {
            if let Some(Ast::ScalarLit(v)) = factors.first_mut() {
                *v = -v.clone();
                if v.is_one() && factors.len() > 2 {
                    factors.remove(0);
                }
                return Ast::Product(factors);
            }
            factors.insert(0, Ast::ScalarLit(-Rational::one()));
            Ast::Product(factors)
        }
        other => Ast::Product(vec![Ast::ScalarLit(-Rational::one()), other]),
    }
}

/// Parses an expression. Arbitrary bytes are accepted as input; every
/// failure is reported with its byte offset.
pub fn parse(input: &[u8]) -> Result<Ast, SyntaxError> {
    let toks = lex(input)?;
    let mut parser = Parser {
        toks,
        pos: 0,
        depth: 0,
    };
    let ast = parser.expr()?;
    if *parser.peek() != Tok::End {
        let mut expected = vec!["`+`", "`-`", "`*`", "`^`"];
        expected.extend_from_slice(FACTOR_START);
        return Err(parser.error(&expected));
    }
    Ok(ast)
}

pub fn parse_str(input: &str) -> Result<Ast, SyntaxError> {
    parse(input.as_bytes())
}

fn list(f: &mut fmt::Formatter<'_>, name: &str, items: &[Ast]) -> fmt::Result {
    write!(f, "{name}[")?;
    for (i, item) in items.iter().enumerate() {
        if i > 0 {
            f.write_str(", ")?;
        }
        write!(f, "{item}")?;
    }
    f.write_str("]")
}

/// Tree dump such as `Power(Product[LetterRef(ad), LetterRef(a)], 2)`.
impl fmt::Display for Ast {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ast::Sum(items) => list(f, "Sum", items),
            Ast::Product(items) => list(f, "Product", items),
            Ast::Power(base, exp) => write!(f, "Power({base}, {exp})"),
            Ast::LetterRef(l) => write!(f, "LetterRef({l})"),
            Ast::OrderedBlock(inner, ordering) => write!(f, "OrderedBlock({inner}, {ordering})"),
            Ast::ScalarLit(v) => write!(f, "ScalarLit({})", boson_core::kernel::rational_text(v)),
            Ast::SymbolRef(s) => write!(f, "SymbolRef({s})"),
        }
    }
}

impl Ast {
    pub fn to_json(&self) -> Value {
        match self {
            Ast::Sum(items) => json!({"sum": items.iter().map(Ast::to_json).collect::<Vec<_>>()}),
            Ast::Product(items) => {
                json!({"product": items.iter().map(Ast::to_json).collect::<Vec<_>>()})
            }
            Ast::Power(base, exp) => json!({"power": {"base": base.to_json(), "exp": exp}}),
            Ast::LetterRef(l) => json!({"letter": l.to_string()}),
            Ast::OrderedBlock(inner, ordering) => json!({
                "block": {"ordering": ordering.to_string(), "inner": inner.to_json()}
            }),
            Ast::ScalarLit(v) => json!({"scalar": boson_core::kernel::rational_text(v)}),
            Ast::SymbolRef(s) => json!({"symbol": s.name()}),
        }
    }
}
