use std::fmt;

use crate::keylang::Diagnostic;

/// Failure raised while parsing pipeline text.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    /// Byte offset into the input where the problem was detected.
    pub position: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "at offset {}: {}", self.position, self.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("image buffer holds {actual} pixels, expected {rows}x{cols}")]
    PixelCount {
        rows: usize,
        cols: usize,
        actual: usize,
    },

    #[error("image dimensions must be at least 1x1, got {rows}x{cols}")]
    EmptyImage { rows: usize, cols: usize },

    #[error("dimension mismatch: {left_rows}x{left_cols} vs {right_rows}x{right_cols}")]
    DimensionMismatch {
        left_rows: usize,
        left_cols: usize,
        right_rows: usize,
        right_cols: usize,
    },

    #[error("scan order is not a permutation of the {rows}x{cols} grid: {reason}")]
    NotPermutation {
        rows: usize,
        cols: usize,
        reason: String,
    },

    #[error("invalid scan spec {0:?}: expected one of C, D, O, S followed by a digit 0-7")]
    InvalidScanSpec(String),

    #[error("character {ch:?}{} is not alphanumeric", match .index { Some(i) => format!(" at index {i}"), None => String::new() })]
    InvalidKeywordChar { ch: char, index: Option<usize> },

    #[error("keyword must not be empty")]
    EmptyKeyword,

    #[error("pipeline syntax error {0}")]
    Parse(#[from] ParseError),

    #[error("pipeline is not decryptable: {}", join_diagnostics(.0))]
    NotDecryptable(Vec<Diagnostic>),

    #[error("image too small for {direction} adjacent pairs")]
    TooSmallForCorrelation { direction: &'static str },

    #[error("{0}")]
    Usage(String),

    #[error("pgm: {0}")]
    Pgm(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

fn join_diagnostics(diags: &[Diagnostic]) -> String {
    diags
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join("; ")
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
