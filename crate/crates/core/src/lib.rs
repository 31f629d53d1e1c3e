//! Randomized input models and prefix-index search for the maximal
//! intersection problem: given a family of term sets and a query set, find
//! a member sharing the most terms with the query.

pub mod document;
pub mod error;
pub mod experiments;
pub mod index;
pub mod io;
pub mod models;
pub mod oracle;
pub mod rng;

pub use document::{
    canonicalize, compare_lex, containment_prefix_len, intersection_size, lcp_length,
    reverse_order_metric, Collection, Document, ModelTag, TermRank,
};
pub use error::{Error, Result};
pub use index::{build_prefix_index, query_max_lcp, PrefixIndex, QueryStats};
pub use models::ModelSpec;
pub use oracle::{InvertedIndex, MatchResult, Oracle};
pub use rng::RngState;
