//! Finite presentations, free-group words, and word-problem oracles.

mod dehn;
pub mod library;
mod oracle;
mod parse;
mod word;

use thiserror::Error;

pub use dehn::{small_cancellation_violation, symmetrized_closure, DehnOracle};
pub(crate) use oracle::KeyedWords;
pub use oracle::{
    AbelianOracle, FiniteTableOracle, FreeGroupOracle, HeisenbergOracle, MultiplicationTable, NormalForm, Oracle,
    OracleKind,
};
pub use parse::{parse_presentation, Presentation, MAX_EXPONENT};
pub use word::{Letter, Word, WordDisplay};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PresentationError {
    #[error("syntax error at {line}:{col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("unknown generator `{name}` at {line}:{col}")]
    UnknownGenerator { name: String, line: usize, col: usize },
    #[error("duplicate generator `{0}`")]
    DuplicateGenerator(String),
    #[error("invalid generator name `{0}`")]
    BadGeneratorName(String),
    #[error("relator {index} is empty after reduction{}", line.map(|l| format!(" (line {l})")).unwrap_or_default())]
    EmptyRelator { index: usize, line: Option<usize> },
    #[error("relator {relator} uses generator index {gen} out of range")]
    GeneratorOutOfRange { relator: usize, gen: usize },
    #[error("presentation fails C'(1/6): piece of length {piece} in a relator of length {len}")]
    NotSmallCancellation { piece: usize, len: usize },
    #[error("invalid multiplication table: {0}")]
    InvalidTable(String),
    #[error("oracle does not match presentation: {0}")]
    OracleMismatch(String),
}

/// Normal form of `w` under `oracle`.
pub fn normal_form(oracle: &Oracle, w: &Word) -> Word {
    oracle.normal_form(w)
}
