use thiserror::Error;

use crate::parse::SyntaxError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Core(#[from] boson_core::Error),
    #[error(transparent)]
    Syntax(#[from] SyntaxError),
    #[error("ordered blocks cannot be nested")]
    NestingUnsupported,
    #[error("expression expands to more than {cap} summands")]
    TooManySummands { cap: usize },
    #[error("symbol `{0}` has no value")]
    UnboundSymbol(String),
    #[error("operator degree {degree} does not fit a Fock space of dimension {dim}")]
    DegreeTooLarge { degree: usize, dim: usize },
    #[error("{0}")]
    Usage(String),
}
