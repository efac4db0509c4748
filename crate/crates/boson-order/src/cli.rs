//! Command-line surface: argument definitions and command dispatch.

use std::str::FromStr;

use boson_core::combinatorics::{bell_poly, StirlingTable};
use boson_core::got::GotEngine;
use boson_core::identities::{verify as verify_identity, IdentityName, IdentityReport};
use boson_core::kernel::rational_text;
use boson_core::{MultiPoly, OrderingParam, Rational};
use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

use crate::error::{Error, Result};
use crate::fock::{identity_check, CheckReport, DEFAULT_DIM, DEFAULT_TOL};
use crate::format::{format, latex_multipoly, to_json, Style, SCHEMA};
use crate::lower::lower;
use crate::parse::parse_str;

/// Largest `n` accepted by `stirling` and `bell`.
pub const MAX_TABLE_N: usize = 1000;
/// Largest truncation order accepted for series identities.
pub const MAX_SERIES_ORDER: usize = 64;

#[derive(Debug, Parser)]
#[command(
    name = "boson-order",
    version,
    about = "Exact reordering of boson ladder-operator expressions"
)]
pub struct Cli {
    /// Output style.
    #[arg(long, global = true, value_enum, default_value_t = Style::Text)]
    pub format: Style,
    /// Truncation order for series identities.
    #[arg(long, global = true, default_value_t = 12)]
    pub order: usize,
    /// Fock-space dimension used by `verify`.
    #[arg(long, global = true, default_value_t = DEFAULT_DIM)]
    pub fock_dim: usize,
    /// Tolerance used by `verify`.
    #[arg(long, global = true, default_value_t = DEFAULT_TOL)]
    pub tol: f64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Rewrite an expression in a target ordering.
    Order {
        /// normal, anti, weyl, s=R (R in [-1, 1]) or sym:NAME.
        #[arg(long, value_parser = parse_target)]
        to: OrderingParam,
        /// Largest number of letters per product handed to the engine.
        #[arg(long, default_value_t = GotEngine::DEFAULT_LETTER_CAP)]
        letter_cap: usize,
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Stirling numbers of the second kind.
    Stirling {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: Option<usize>,
    },
    /// Bell polynomial B(n, x), optionally evaluated.
    Bell {
        #[arg(long)]
        n: usize,
        #[arg(long, value_parser = parse_rational, allow_hyphen_values = true)]
        x: Option<Rational>,
    },
    /// Check a named identity against an independent computation.
    Identity {
        #[arg(long, value_parser = IdentityName::from_str)]
        name: IdentityName,
        /// Power for the number-power and bell-form identities.
        #[arg(long)]
        n: Option<usize>,
    },
    /// Compare two expressions on a truncated Fock space: `verify "E1" == "E2"`.
    Verify {
        #[arg(num_args = 3, value_names = ["LHS", "==", "RHS"], allow_hyphen_values = true)]
        sides: Vec<String>,
    },
    /// Dump the syntax tree of an expression.
    Parse {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
}

fn parse_rational(text: &str) -> std::result::Result<Rational, String> {
    let value: Rational = text
        .trim()
        .parse()
        .map_err(|_| format!("`{text}` is not a rational number"))?;
    Ok(value)
}

pub fn parse_target(text: &str) -> std::result::Result<OrderingParam, String> {
    match text {
        "normal" => Ok(OrderingParam::normal()),
        "anti" => Ok(OrderingParam::anti_normal()),
        "weyl" => Ok(OrderingParam::weyl()),
        _ => {
            if let Some(value) = text.strip_prefix("s=") {
                OrderingParam::value(parse_rational(value)?).map_err(|e| e.to_string())
            } else if let Some(name) = text.strip_prefix("sym:") {
                let valid = name.starts_with(|c: char| c.is_ascii_alphabetic() || c == '_')
                    && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
                if valid && name != "a" && name != "ad" {
                    Ok(OrderingParam::symbol(name))
                } else {
                    Err(format!("`{name}` is not a valid symbol name"))
                }
            } else {
                Err(format!(
                    "unknown target `{text}`; use normal, anti, weyl, s=R or sym:NAME"
                ))
            }
        }
    }
}

/// What a command printed and whether it counts as success.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub passed: bool,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            stdout,
            passed: true,
        }
    }

    pub fn exit_code(&self) -> i32 {
        if self.passed {
            0
        } else {
            1
        }
    }
}

#[derive(Serialize)]
struct StirlingRow {
    n: usize,
    k: usize,
    value: String,
}

fn stirling(n: usize, k: Option<usize>, style: Style) -> Result<Outcome> {
    if n > MAX_TABLE_N {
        return Err(Error::Usage(format!("n must be at most {MAX_TABLE_N}")));
    }
    let table = StirlingTable::new(n);
    let ks: Vec<usize> = match k {
        Some(k) => vec![k],
        None => (0..=n).collect(),
    };
    let rows: Vec<StirlingRow> = ks
        .into_iter()
        .map(|k| StirlingRow {
            n,
            k,
            value: table.get(n, k).to_string(),
        })
        .collect();
    let out = match style {
        Style::Json => to_json(&json!({"schema": SCHEMA, "rows": rows})),
        _ => rows
            .iter()
            .map(|r| format!("S({}, {}) = {}", r.n, r.k, r.value))
            .collect::<Vec<_>>()
            .join("\n"),
    };
    Ok(Outcome::ok(out))
}

fn bell(n: usize, x: Option<Rational>, style: Style) -> Result<Outcome> {
    if n > MAX_TABLE_N {
        return Err(Error::Usage(format!("n must be at most {MAX_TABLE_N}")));
    }
    let poly = bell_poly(n);
    let out = match (x, style) {
        (Some(x), Style::Json) => to_json(&json!({
            "schema": SCHEMA,
            "n": n,
            "x": rational_text(&x),
            "value": rational_text(&poly.eval(&x)),
        })),
        (Some(x), _) => format!(
            "B({n}, {}) = {}",
            rational_text(&x),
            rational_text(&poly.eval(&x))
        ),
        (None, Style::Json) => to_json(&json!({
            "schema": SCHEMA,
            "n": n,
            "coeffs": poly.coeffs().iter().map(ToString::to_string).collect::<Vec<_>>(),
        })),
        (None, Style::Latex) => format!(
            "B_{{{n}}}(x) = {}",
            latex_multipoly(&poly.compose(&MultiPoly::symbol("x")))
        ),
        (None, Style::Text) => format!("B({n}, x) = {}", poly.compose(&MultiPoly::symbol("x"))),
    };
    Ok(Outcome::ok(out))
}

fn identity_text(report: &IdentityReport) -> String {
    let size = if report.name.takes_order() {
        "order"
    } else {
        "n"
    };
    let mut lines = vec![format!("identity {} {size}={}", report.name, report.size)];
    for c in &report.checks {
        lines.push(format!(
            "{} {}: expected {}, computed {}",
            if c.pass { "PASS" } else { "FAIL" },
            c.label,
            c.expected,
            c.computed
        ));
    }
    let passed = report.checks.iter().filter(|c| c.pass).count();
    lines.push(format!(
        "{} ({passed}/{} coefficients)",
        if report.passed() { "PASS" } else { "FAIL" },
        report.checks.len()
    ));
    lines.join("\n")
}

fn identity(name: IdentityName, n: Option<usize>, order: usize, style: Style) -> Result<Outcome> {
    let size = if name.takes_order() {
        if order > MAX_SERIES_ORDER {
            return Err(Error::Usage(format!(
                "order must be at most {MAX_SERIES_ORDER}"
            )));
        }
        n.unwrap_or(order)
    } else {
        n.ok_or_else(|| Error::Usage(format!("identity `{name}` needs --n")))?
    };
    let report = verify_identity(name, size)?;
    let stdout = match style {
        Style::Json => to_json(&json!({
            "schema": SCHEMA,
            "identity": name.as_str(),
            "size": size,
            "passed": report.passed(),
            "checks": report.checks.iter().map(|c| json!({
                "label": c.label,
                "expected": c.expected,
                "computed": c.computed,
                "pass": c.pass,
            })).collect::<Vec<_>>(),
        })),
        _ => identity_text(&report),
    };
    Ok(Outcome {
        stdout,
        passed: report.passed(),
    })
}

fn check_json(report: &CheckReport) -> String {
    to_json(&json!({
        "schema": SCHEMA,
        "pass": report.pass,
        "max_diff": report.max_diff,
        "tol": report.tol,
        "dim": report.dim,
        "degree": report.degree,
        "safe_size": report.safe_size,
    }))
}

fn verify(sides: &[String], dim: usize, tol: f64, style: Style) -> Result<Outcome> {
    let [lhs, eq, rhs] = sides else {
        return Err(Error::Usage(
            "usage: verify \"<expr1>\" == \"<expr2>\"".into(),
        ));
    };
    if eq != "==" {
        return Err(Error::Usage(format!(
            "expected `==` between the expressions, found `{eq}`"
        )));
    }
    if tol.is_nan() || tol < 0.0 {
        return Err(Error::Usage(
            "tolerance must be a non-negative number".into(),
        ));
    }
    let lhs = lower(&parse_str(lhs)?)?;
    let rhs = lower(&parse_str(rhs)?)?;
    let report = identity_check(&lhs, &rhs, dim, tol)?;
    let stdout = match style {
        Style::Json => check_json(&report),
        _ => report.to_string(),
    };
    Ok(Outcome {
        stdout,
        passed: report.pass,
    })
}

/// Runs a parsed command line.
pub fn run(cli: &Cli) -> Result<Outcome> {
    let style = cli.format;
    match &cli.command {
        Command::Order {
            to,
            letter_cap,
            expr,
        } => {
            if *letter_cap > GotEngine::MAX_LETTER_CAP {
                return Err(Error::Usage(format!(
                    "letter cap must be at most {}",
                    GotEngine::MAX_LETTER_CAP
                )));
            }
            let engine = GotEngine::with_letter_cap(*letter_cap);
            let p = lower(&parse_str(expr)?)?.order(&engine, to)?;
            Ok(Outcome::ok(format(&p, style)))
        }
        Command::Stirling { n, k } => stirling(*n, *k, style),
        Command::Bell { n, x } => bell(*n, x.clone(), style),
        Command::Identity { name, n } => identity(*name, *n, cli.order, style),
        Command::Verify { sides } => verify(sides, cli.fock_dim, cli.tol, style),
        Command::Parse { expr } => {
            let ast = parse_str(expr)?;
            Ok(Outcome::ok(match style {
                Style::Json => to_json(&json!({"schema": SCHEMA, "ast": ast.to_json()})),
                _ => ast.to_string(),
            }))
        }
    }
}
