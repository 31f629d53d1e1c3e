//! Documents as sorted sets of term ranks, and the set and ordering
//! primitives the index, the oracle and the experiments are built on.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// 1-based frequency rank of a term; rank 1 is the most frequent term.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[repr(transparent)]
pub struct TermRank(u32);

impl TermRank {
    pub fn new(value: i64) -> Result<Self> {
        if value < 1 || value > u32::MAX as i64 {
            return Err(Error::InvalidTermRank(value));
        }
        Ok(TermRank(value as u32))
    }

    /// Caller guarantees `value >= 1`.
    pub(crate) const fn from_u32(value: u32) -> Self {
        debug_assert!(value >= 1);
        TermRank(value)
    }

    #[inline]
    pub const fn get(self) -> u32 {
        self.0
    }
}

impl fmt::Display for TermRank {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// A document: strictly increasing sequence of term ranks.
///
/// The derived `Ord` is the lexicographic order on the rank sequence, with a
/// proper prefix ordered before its extensions.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Document {
    terms: Vec<TermRank>,
}

impl Document {
    pub fn empty() -> Self {
        Document { terms: Vec::new() }
    }

    /// Wraps an already canonical sequence.
    pub(crate) fn from_sorted(terms: Vec<TermRank>) -> Self {
        debug_assert!(terms.windows(2).all(|w| w[0] < w[1]));
        Document { terms }
    }

    /// Validates that `ranks` is strictly increasing and 1-based.
    pub fn from_sorted_ranks(ranks: &[u32]) -> Result<Self> {
        let mut terms = Vec::with_capacity(ranks.len());
        for (i, &r) in ranks.iter().enumerate() {
            if r == 0 {
                return Err(Error::InvalidTermRank(0));
            }
            if i > 0 && ranks[i - 1] >= r {
                return Err(Error::InvalidDocument {
                    line: 0,
                    reason: format!("ranks not strictly increasing at position {}", i + 1),
                });
            }
            terms.push(TermRank(r));
        }
        Ok(Document { terms })
    }

    #[inline]
    pub fn terms(&self) -> &[TermRank] {
        &self.terms
    }

    pub fn ranks(&self) -> impl Iterator<Item = u32> + '_ {
        self.terms.iter().map(|t| t.get())
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn contains(&self, term: TermRank) -> bool {
        self.terms.binary_search(&term).is_ok()
    }

    pub fn into_terms(self) -> Vec<TermRank> {
        self.terms
    }
}

impl fmt::Display for Document {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{t}")?;
        }
        Ok(())
    }
}

/// Sorts and deduplicates raw ranks. Fails on any rank below 1.
pub fn canonicalize<I>(raw_terms: I) -> Result<Document>
where
    I: IntoIterator<Item = i64>,
{
    let mut terms = raw_terms
        .into_iter()
        .map(TermRank::new)
        .collect::<Result<Vec<_>>>()?;
    terms.sort_unstable();
    terms.dedup();
    Ok(Document { terms })
}

/// `|a ∩ b|` by a linear merge of the two sorted sequences.
pub fn intersection_size(a: &Document, b: &Document) -> usize {
    let (a, b) = (a.terms(), b.terms());
    let (mut i, mut j, mut count) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            Ordering::Less => i += 1,
            Ordering::Greater => j += 1,
            Ordering::Equal => {
                count += 1;
                i += 1;
                j += 1;
            }
        }
    }
    count
}

/// Length of the longest common prefix of the two rank sequences.
pub fn lcp_length(a: &Document, b: &Document) -> usize {
    a.terms()
        .iter()
        .zip(b.terms())
        .take_while(|(x, y)| x == y)
        .count()
}

/// Largest `p` such that the first `p` terms of `query` all occur in `d`.
///
/// Unlike [`lcp_length`] the terms may sit anywhere in `d`.
pub fn containment_prefix_len(query: &Document, d: &Document) -> usize {
    let doc = d.terms();
    let mut j = 0;
    let mut p = 0;
    for &t in query.terms() {
        while j < doc.len() && doc[j] < t {
            j += 1;
        }
        if j == doc.len() || doc[j] != t {
            break;
        }
        p += 1;
        j += 1;
    }
    p
}

/// `(2M - 2|a∩b|) / (2M - |a∩b|)`, the distance obtained by padding every
/// document to cardinality `M` with unique dummy terms.
pub fn reverse_order_metric(a: &Document, b: &Document, max_cardinality: usize) -> Result<f64> {
    let largest = a.len().max(b.len());
    if max_cardinality == 0 || max_cardinality < largest {
        return Err(Error::InvalidMaxCardinality {
            max_cardinality,
            document_size: largest,
        });
    }
    let m = max_cardinality as f64;
    let common = intersection_size(a, b) as f64;
    Ok((2.0 * m - 2.0 * common) / (2.0 * m - common))
}

/// Lexicographic order on the sorted rank sequences.
#[inline]
pub fn compare_lex(a: &Document, b: &Document) -> Ordering {
    a.terms().cmp(b.terms())
}

/// Which generator produced a collection, with its parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModelTag {
    Zipf { n: usize, m: u32, seed: u64 },
    Hier { k: u32, n: usize, seed: u64 },
    /// Loaded from elsewhere; `universe` bounds the term ranks.
    External { universe: u32 },
}

impl ModelTag {
    pub fn name(&self) -> &'static str {
        match self {
            ModelTag::Zipf { .. } => "zipf",
            ModelTag::Hier { .. } => "hier",
            ModelTag::External { .. } => "external",
        }
    }

    /// Largest admissible term rank.
    pub fn universe(&self) -> u32 {
        match *self {
            ModelTag::Zipf { m, .. } => m,
            ModelTag::Hier { k, .. } => crate::models::hier_universe(k),
            ModelTag::External { universe } => universe,
        }
    }
}

/// An ordered family of documents plus the model that produced it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Collection {
    docs: Vec<Document>,
    model: ModelTag,
    max_cardinality: usize,
}

impl Collection {
    pub fn new(docs: Vec<Document>, model: ModelTag) -> Self {
        let max_cardinality = docs.iter().map(Document::len).max().unwrap_or(0);
        Collection {
            docs,
            model,
            max_cardinality,
        }
    }

    /// An `external` collection whose universe is the largest rank present.
    pub fn external(docs: Vec<Document>) -> Self {
        let universe = docs
            .iter()
            .filter_map(|d| d.terms().last())
            .map(|t| t.get())
            .max()
            .unwrap_or(0);
        Collection::new(docs, ModelTag::External { universe })
    }

    #[inline]
    pub fn docs(&self) -> &[Document] {
        &self.docs
    }

    #[inline]
    pub fn get(&self, index: usize) -> &Document {
        &self.docs[index]
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.docs.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.docs.is_empty()
    }

    pub fn model(&self) -> ModelTag {
        self.model
    }

    /// Largest document cardinality, 0 for an empty collection.
    pub fn max_cardinality(&self) -> usize {
        self.max_cardinality
    }
}
