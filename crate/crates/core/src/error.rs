use thiserror::Error;

/// Errors produced by the document model, the index and the file formats.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid term rank {0}: ranks are 1-based")]
    InvalidTermRank(i64),

    #[error("max cardinality {max_cardinality} is smaller than a document of size {document_size}")]
    InvalidMaxCardinality {
        max_cardinality: usize,
        document_size: usize,
    },

    #[error("invalid cell address level={level} cell={cell} slot={slot} for k={k}")]
    InvalidCell {
        level: u32,
        cell: u32,
        slot: u32,
        k: u32,
    },

    #[error("collection is empty")]
    EmptyCollection,

    #[error("prefix length {q} exceeds query length {len}")]
    InvalidPrefixLength { q: usize, len: usize },

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("format error: {0}")]
    Format(String),

    #[error("invalid document on line {line}: {reason}")]
    InvalidDocument { line: usize, reason: String },

    #[error("need at least 2 points to render, got {0}")]
    InsufficientData(usize),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
