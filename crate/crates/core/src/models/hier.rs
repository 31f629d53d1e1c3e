use rand::Rng;
use rayon::prelude::*;

use crate::document::{Collection, Document, ModelTag, TermRank};
use crate::error::{Error, Result};
use crate::rng::RngState;

/// Largest supported number of levels; `(2^k - 1) * k` must fit a `u32`.
pub const MAX_HIER_LEVELS: u32 = 26;

/// Parameters of the hierarchical scheme: `k` levels, level `i` split into
/// `2^(i-1)` cells of `k` terms each.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HierParams {
    pub k: u32,
    pub n: usize,
    pub seed: u64,
}

impl HierParams {
    /// `n` defaults to `2^k`.
    pub fn new(k: u32, seed: u64) -> Result<Self> {
        if !(2..=MAX_HIER_LEVELS).contains(&k) {
            return Err(Error::InvalidParams(format!(
                "hierarchical scheme needs 2 <= k <= {MAX_HIER_LEVELS} (got {k})"
            )));
        }
        Ok(HierParams {
            k,
            n: 1usize << k,
            seed,
        })
    }

    pub fn with_n(mut self, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParams("hierarchical scheme needs n >= 1".into()));
        }
        self.n = n;
        Ok(self)
    }
}

/// Size of the term universe, `(2^k - 1) * k`.
pub fn hier_universe(k: u32) -> u32 {
    ((1u32 << k) - 1) * k
}

/// Position of a term in the scheme: cell `C_{level,cell}` and slot within it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CellAddress {
    pub level: u32,
    pub cell: u32,
    pub slot: u32,
}

impl CellAddress {
    fn validate(&self, k: u32) -> Result<()> {
        let ok = (2..=MAX_HIER_LEVELS).contains(&k)
            && (1..=k).contains(&self.level)
            && (1..=1u32 << (self.level - 1)).contains(&self.cell)
            && (1..=k).contains(&self.slot);
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidCell {
                level: self.level,
                cell: self.cell,
                slot: self.slot,
                k,
            })
        }
    }

    /// Whether `self` is the cell directly above `below`.
    pub fn is_above(&self, below: &CellAddress) -> bool {
        below.level == self.level + 1 && below.cell.div_ceil(2) == self.cell
    }
}

/// Global id `(2^(level-1) - 1 + cell - 1) * k + slot`.
///
/// Ids grow with level, then cell, then slot, so a document's ascending term
/// list is in level order.
pub fn hier_term_id(addr: CellAddress, k: u32) -> Result<TermRank> {
    addr.validate(k)?;
    let cell_index = (1u32 << (addr.level - 1)) - 1 + (addr.cell - 1);
    Ok(TermRank::from_u32(cell_index * k + addr.slot))
}

/// Inverse of [`hier_term_id`].
pub fn hier_decode_term(term: TermRank, k: u32) -> Result<CellAddress> {
    let id = term.get();
    if !(2..=MAX_HIER_LEVELS).contains(&k) || id > hier_universe(k) {
        return Err(Error::InvalidCell {
            level: 0,
            cell: 0,
            slot: id,
            k,
        });
    }
    let x = id - 1;
    let slot = x % k + 1;
    let cell_index = x / k;
    let level = (cell_index + 1).ilog2() + 1;
    let cell = cell_index + 2 - (1u32 << (level - 1));
    Ok(CellAddress { level, cell, slot })
}

/// Decodes a document into its cell path, checking one term per level and
/// the above-relation between consecutive levels.
pub fn cell_path(doc: &Document, k: u32) -> Result<Vec<CellAddress>> {
    let path = doc
        .terms()
        .iter()
        .map(|&t| hier_decode_term(t, k))
        .collect::<Result<Vec<_>>>()?;
    let broken = |reason: String| Error::InvalidDocument { line: 0, reason };
    if path.len() != k as usize {
        return Err(broken(format!("expected {k} terms, found {}", path.len())));
    }
    for (i, addr) in path.iter().enumerate() {
        if addr.level != i as u32 + 1 {
            return Err(broken(format!("term {} sits on level {}", i + 1, addr.level)));
        }
        if i > 0 && !path[i - 1].is_above(addr) {
            return Err(broken(format!(
                "cell C_{{{},{}}} is not below C_{{{},{}}}",
                addr.level,
                addr.cell,
                path[i - 1].level,
                path[i - 1].cell
            )));
        }
    }
    Ok(path)
}

/// One hierarchical document: a uniform leaf cell, its ancestors, and one
/// uniform slot per marked cell.
pub fn gen_hier_document<R: Rng + ?Sized>(k: u32, rng: &mut R) -> Document {
    let mut cells = vec![0u32; k as usize];
    cells[k as usize - 1] = rng.random_range(1..=1u32 << (k - 1));
    for level in (1..k as usize).rev() {
        cells[level - 1] = cells[level].div_ceil(2);
    }
    let terms = cells
        .iter()
        .enumerate()
        .map(|(i, &cell)| {
            let slot = rng.random_range(1..=k);
            let level = i as u32 + 1;
            let cell_index = (1u32 << (level - 1)) - 1 + (cell - 1);
            TermRank::from_u32(cell_index * k + slot)
        })
        .collect();
    Document::from_sorted(terms)
}

/// `p.n` documents, document `i` drawn from stream `derive(seed, i)`.
pub fn gen_hier_collection(p: &HierParams) -> Collection {
    let docs = (0..p.n)
        .into_par_iter()
        .map(|i| gen_hier_document(p.k, &mut RngState::derive(p.seed, i as u64)))
        .collect();
    Collection::new(
        docs,
        ModelTag::Hier {
            k: p.k,
            n: p.n,
            seed: p.seed,
        },
    )
}
