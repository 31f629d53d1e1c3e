//! The two randomized input models, the document predicates used by the
//! analysis of the Zipf model, and the closed-form matching levels.

mod hier;
mod levels;
mod predicates;
mod zipf;

pub use hier::{
    cell_path, gen_hier_collection, gen_hier_document, hier_decode_term, hier_term_id,
    hier_universe, CellAddress, HierParams, MAX_HIER_LEVELS,
};
pub use levels::{
    harmonic_number, hier_matching_levels, hier_zipf_law_product, lemma1_bound,
    zipf_matching_level, zipf_matching_level_ln, ZipfThresholdParams,
};
pub use predicates::{
    extend_with_missing_prefix_terms, gen_regular_document, has_full_prefix_density,
    is_delta_n_generic, is_regular, regular_group, GenericityWindow,
};
pub use zipf::{
    gen_zipf_collection, gen_zipf_document, gen_zipf_document_naive, zipf_next_included,
    ZipfParams,
};

use crate::document::Document;
use crate::error::Result;
use crate::rng::RngState;

/// Model selector without a seed; experiments derive their own seeds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModelSpec {
    Zipf { n: usize, m: u32 },
    Hier { k: u32, n: usize },
}

impl ModelSpec {
    pub fn validate(&self) -> Result<()> {
        match *self {
            ModelSpec::Zipf { n, m } => ZipfParams::new(n, m, 0).map(|_| ()),
            ModelSpec::Hier { k, n } => HierParams::new(k, 0)?.with_n(n).map(|_| ()),
        }
    }

    pub fn n(&self) -> usize {
        match *self {
            ModelSpec::Zipf { n, .. } | ModelSpec::Hier { n, .. } => n,
        }
    }

    /// Generates the collection of this model under `seed`.
    pub fn collection(&self, seed: u64) -> Result<crate::Collection> {
        Ok(match *self {
            ModelSpec::Zipf { n, m } => gen_zipf_collection(&ZipfParams::new(n, m, seed)?),
            ModelSpec::Hier { k, n } => gen_hier_collection(&HierParams::new(k, seed)?.with_n(n)?),
        })
    }

    /// Draws one document (a query) from the model.
    pub fn document(&self, rng: &mut RngState) -> Document {
        match *self {
            ModelSpec::Zipf { m, .. } => gen_zipf_document(m, rng),
            ModelSpec::Hier { k, .. } => gen_hier_document(k, rng),
        }
    }
}
