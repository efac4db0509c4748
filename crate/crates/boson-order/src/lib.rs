//! Text frontend for `boson-core`: an expression parser, canonical
//! formatters, an exact truncated Fock-space oracle and the command-line
//! dispatcher behind the `boson-order` binary.
//!
//! ```
//! use boson_core::got::GotEngine;
//! use boson_core::OrderingParam;
//! use boson_order::{lower, parse_str};
//!
//! let expr = lower(&parse_str("a ad").unwrap()).unwrap();
//! let p = expr.order(&GotEngine::default(), &OrderingParam::normal()).unwrap();
//! assert_eq!(p.to_string(), "N[ad a + 1]");
//! ```

pub mod cli;
pub mod error;
pub mod fock;
pub mod format;
pub mod lower;
pub mod parse;

pub use error::{Error, Result};
pub use fock::{identity_check, CheckReport, FockMatrix, Realize};
pub use format::{format, Render, Style};
pub use lower::{lower, Expression};
pub use parse::{parse, parse_str, Ast, SyntaxError};
