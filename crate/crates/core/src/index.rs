//! Lexicographically sorted documents with binary-search longest common
//! prefix queries.
//!
//! Both models share this structure. Hierarchical term ids grow with the
//! level and encode the cell, so ordering documents by their sorted term
//! lists groups them by cell path exactly as the Zipf ordering groups them
//! by their most frequent terms.

use std::cmp::Ordering;

use crate::document::{Collection, Document};
use crate::error::{Error, Result};
use crate::oracle::MatchResult;

/// Comparison counters for a single query.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct QueryStats {
    /// Whole-document lexicographic comparisons.
    pub sequence_comparisons: usize,
    /// Individual rank comparisons inside those.
    pub term_comparisons: usize,
}

/// Sorted permutation of a collection.
#[derive(Debug, Clone)]
pub struct PrefixIndex<'a> {
    collection: &'a Collection,
    order: Vec<u32>,
}

impl<'a> PrefixIndex<'a> {
    /// Stable sort of the document indices by the lexicographic order.
    pub fn build(collection: &'a Collection) -> Self {
        let docs = collection.docs();
        let mut order: Vec<u32> = (0..docs.len() as u32).collect();
        order.sort_by(|&a, &b| docs[a as usize].cmp(&docs[b as usize]));
        PrefixIndex { collection, order }
    }

    /// Reattaches a stored order, checking that it is a permutation that
    /// sorts the collection.
    pub fn from_order(collection: &'a Collection, order: Vec<u32>) -> Result<Self> {
        let n = collection.len();
        if order.len() != n {
            return Err(Error::Format(format!(
                "index lists {} documents, collection has {n}",
                order.len()
            )));
        }
        let mut seen = vec![false; n];
        for &i in &order {
            let slot = seen.get_mut(i as usize).ok_or_else(|| {
                Error::Format(format!("document index {i} out of range"))
            })?;
            if std::mem::replace(slot, true) {
                return Err(Error::Format(format!("document index {i} listed twice")));
            }
        }
        let sorted = order.windows(2).all(|w| {
            let (a, b) = (collection.get(w[0] as usize), collection.get(w[1] as usize));
            a < b || (a == b && w[0] < w[1])
        });
        if !sorted {
            return Err(Error::Format("index order does not sort the collection".into()));
        }
        Ok(PrefixIndex { collection, order })
    }

    pub fn order(&self) -> &[u32] {
        &self.order
    }

    pub fn collection(&self) -> &'a Collection {
        self.collection
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    /// Document with the longest common prefix with `query`.
    ///
    /// Binary search for the insertion point; the best prefix is always held
    /// by one of the two neighbours of that point, and both neighbours were
    /// compared during the search, so their prefix lengths come for free.
    /// On equal prefix length the lower original index wins.
    pub fn query(&self, query: &Document) -> Result<(MatchResult, QueryStats)> {
        if self.order.is_empty() {
            return Err(Error::EmptyCollection);
        }
        let mut stats = QueryStats::default();
        let (mut lo, mut hi) = (0usize, self.order.len());
        let mut below: Option<(usize, usize)> = None;
        let mut above: Option<(usize, usize)> = None;
        while lo < hi {
            let mid = lo + (hi - lo) / 2;
            let doc_index = self.order[mid] as usize;
            let (ord, lcp) = compare_counting(self.collection.get(doc_index), query, &mut stats);
            if ord == Ordering::Less {
                below = Some((doc_index, lcp));
                lo = mid + 1;
            } else {
                above = Some((doc_index, lcp));
                hi = mid;
            }
        }
        let (doc_index, _) = match (below, above) {
            (Some(b), Some(a)) => {
                if b.1 > a.1 || (b.1 == a.1 && b.0 < a.0) {
                    b
                } else {
                    a
                }
            }
            (Some(x), None) | (None, Some(x)) => x,
            (None, None) => unreachable!("non-empty index compares at least once"),
        };
        Ok((MatchResult::score(self.collection, doc_index, query), stats))
    }
}

/// Three-way comparison of `doc` against `query` that also returns the
/// common prefix length.
fn compare_counting(doc: &Document, query: &Document, stats: &mut QueryStats) -> (Ordering, usize) {
    stats.sequence_comparisons += 1;
    let (a, b) = (doc.terms(), query.terms());
    for (i, (x, y)) in a.iter().zip(b).enumerate() {
        stats.term_comparisons += 1;
        match x.cmp(y) {
            Ordering::Equal => {}
            ord => return (ord, i),
        }
    }
    let common = a.len().min(b.len());
    (a.len().cmp(&b.len()), common)
}

pub fn build_prefix_index(c: &Collection) -> PrefixIndex<'_> {
    PrefixIndex::build(c)
}

pub fn query_max_lcp(idx: &PrefixIndex<'_>, query: &Document) -> Result<(MatchResult, QueryStats)> {
    idx.query(query)
}
