//! Error types shared across the crate.

use thiserror::Error;

/// Errors raised while parsing a book encounter data file.
#[derive(Debug, Error)]
pub enum ParseError {
    #[error("line {line}: empty label between separators")]
    EmptyLabel { line: usize },
    #[error("line {line}: empty clique between separators")]
    EmptyClique { line: usize },
    #[error("line {line}: invalid character code `{token}`")]
    InvalidLabel { line: usize, token: String },
    #[error("line {line}: malformed declaration, expected `CODE name[,description]`")]
    MalformedDeclaration { line: usize },
    #[error("line {line}: duplicate declaration of `{code}`")]
    DuplicateDeclaration { line: usize, code: String },
    #[error("line {line}: undeclared label `{label}` rejected in strict mode")]
    UndeclaredLabel { line: usize, label: String },
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

/// Errors raised while parsing the genre map configuration.
#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("line {line}: unknown genre letter `{letter}`, expected B, L or F")]
    UnknownGenre { line: usize, letter: String },
    #[error("line {line}: duplicate book id `{book_id}`")]
    DuplicateBook { line: usize, book_id: String },
    #[error("line {line}: expected `book_id,genre_letter`")]
    Malformed { line: usize },
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

/// Domain errors for graph accessors and whole-graph metrics.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum MetricError {
    #[error("graph has no nodes")]
    EmptyGraph,
    #[error("graph has no edges")]
    EdgelessGraph,
    #[error("no data points")]
    NoData,
    #[error("metric requires at least {needed} nodes, graph has {got}")]
    TooFewNodes { needed: usize, got: usize },
    #[error("unknown node `{0}`")]
    UnknownNode(String),
}

/// Errors raised by the discrete power-law fitter.
#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum FitError {
    #[error("degenerate degree distribution: all observed values are equal")]
    DegenerateDistribution,
    #[error("no positive degrees to fit")]
    NoData,
    #[error("no candidate k_min keeps a tail of at least {min_tail} samples")]
    InsufficientTail { min_tail: usize },
}

/// Errors raised by the correlation routines.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum CorrelationError {
    #[error("sequence lengths differ: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("correlation needs at least two points")]
    TooShort,
    #[error("correlation undefined: a sequence has zero variance")]
    ZeroVariance,
}
