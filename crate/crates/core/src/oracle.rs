//! Exact answers by counting over an inverted index.

use crate::document::{Collection, Document, TermRank};
use crate::error::{Error, Result};

/// A chosen document and its three match scores against a query.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MatchResult {
    pub doc_index: usize,
    /// Literal common prefix of the two rank sequences.
    pub lcp: usize,
    /// Leading query terms all contained in the document.
    pub containment_prefix: usize,
    pub intersection: usize,
}

impl MatchResult {
    pub fn score(collection: &Collection, doc_index: usize, query: &Document) -> Self {
        let d = collection.get(doc_index);
        MatchResult {
            doc_index,
            lcp: crate::lcp_length(query, d),
            containment_prefix: crate::containment_prefix_len(query, d),
            intersection: crate::intersection_size(query, d),
        }
    }
}

/// Postings lists: for every term rank the ascending indices of the
/// documents containing it.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct InvertedIndex {
    // postings[r] is the list of term rank r; slot 0 is unused.
    postings: Vec<Vec<u32>>,
    num_docs: usize,
}

impl InvertedIndex {
    pub fn build(c: &Collection) -> Self {
        let top = c
            .docs()
            .iter()
            .filter_map(|d| d.terms().last())
            .map(|t| t.get() as usize)
            .max()
            .unwrap_or(0);
        let mut postings = vec![Vec::new(); top + 1];
        for (i, d) in c.docs().iter().enumerate() {
            for t in d.terms() {
                postings[t.get() as usize].push(i as u32);
            }
        }
        InvertedIndex {
            postings,
            num_docs: c.len(),
        }
    }

    pub fn postings(&self, term: TermRank) -> &[u32] {
        self.postings
            .get(term.get() as usize)
            .map_or(&[], Vec::as_slice)
    }

    /// `(term, postings)` pairs with non-empty postings, ascending by term.
    pub fn iter(&self) -> impl Iterator<Item = (TermRank, &[u32])> + '_ {
        self.postings
            .iter()
            .enumerate()
            .skip(1)
            .filter(|(_, p)| !p.is_empty())
            .map(|(r, p)| (TermRank::from_u32(r as u32), p.as_slice()))
    }

    pub fn total_postings(&self) -> usize {
        self.postings.iter().map(Vec::len).sum()
    }

    pub fn num_docs(&self) -> usize {
        self.num_docs
    }
}

/// Brute-force MaxInt and the existence predicates over one collection.
#[derive(Debug, Clone)]
pub struct Oracle<'a> {
    collection: &'a Collection,
    inverted: InvertedIndex,
}

impl<'a> Oracle<'a> {
    pub fn new(collection: &'a Collection) -> Self {
        Oracle {
            collection,
            inverted: InvertedIndex::build(collection),
        }
    }

    pub fn inverted(&self) -> &InvertedIndex {
        &self.inverted
    }

    fn ensure_non_empty(&self) -> Result<()> {
        if self.collection.is_empty() {
            Err(Error::EmptyCollection)
        } else {
            Ok(())
        }
    }

    /// Exact argmax of `|query ∩ d|`, lowest index on ties; doc 0 when
    /// nothing overlaps.
    pub fn max_intersection(&self, query: &Document) -> Result<MatchResult> {
        self.ensure_non_empty()?;
        let mut counts = vec![0u32; self.collection.len()];
        for &t in query.terms() {
            for &doc in self.inverted.postings(t) {
                counts[doc as usize] += 1;
            }
        }
        let (best, _) = counts
            .iter()
            .enumerate()
            .fold((0, 0), |(bi, bc), (i, &c)| if c > bc { (i, c) } else { (bi, bc) });
        Ok(MatchResult::score(self.collection, best, query))
    }

    /// Longest query prefix contained in some document, with the lowest
    /// such document.
    pub fn max_containment_prefix(&self, query: &Document) -> Result<(usize, usize)> {
        self.ensure_non_empty()?;
        let mut terms = query.terms().iter();
        let Some(&first) = terms.next() else {
            return Ok((0, 0));
        };
        let mut candidates = self.inverted.postings(first).to_vec();
        if candidates.is_empty() {
            return Ok((0, 0));
        }
        let mut p = 1;
        for &t in terms {
            let next = intersect_sorted(&candidates, self.inverted.postings(t));
            if next.is_empty() {
                break;
            }
            candidates = next;
            p += 1;
        }
        Ok((p, candidates[0] as usize))
    }

    pub fn exists_any_match(&self, query: &Document, q: usize) -> Result<bool> {
        Ok(self.max_intersection(query)?.intersection >= q)
    }

    /// Some document contains all of the first `q` query terms.
    pub fn exists_prefix_containment(&self, query: &Document, q: usize) -> Result<bool> {
        if q > query.len() {
            return Err(Error::InvalidPrefixLength { q, len: query.len() });
        }
        self.ensure_non_empty()?;
        let mut terms = query.terms()[..q].iter();
        let Some(&first) = terms.next() else {
            return Ok(true);
        };
        let mut candidates = self.inverted.postings(first).to_vec();
        for &t in terms {
            if candidates.is_empty() {
                break;
            }
            candidates = intersect_sorted(&candidates, self.inverted.postings(t));
        }
        Ok(!candidates.is_empty())
    }
}

fn intersect_sorted(a: &[u32], b: &[u32]) -> Vec<u32> {
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::with_capacity(a.len().min(b.len()));
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

pub fn build_inverted_index(c: &Collection) -> InvertedIndex {
    InvertedIndex::build(c)
}

pub fn oracle_max_intersection(c: &Collection, query: &Document) -> Result<MatchResult> {
    Oracle::new(c).max_intersection(query)
}

pub fn exists_any_match(c: &Collection, query: &Document, q: usize) -> Result<bool> {
    Oracle::new(c).exists_any_match(query, q)
}

pub fn exists_prefix_containment(c: &Collection, query: &Document, q: usize) -> Result<bool> {
    Oracle::new(c).exists_prefix_containment(query, q)
}

/// Maximum literal LCP over every document, by exhaustive scan.
pub fn brute_force_max_lcp(c: &Collection, query: &Document) -> usize {
    c.docs()
        .iter()
        .map(|d| crate::lcp_length(query, d))
        .max()
        .unwrap_or(0)
}
