//! Shared workloads for the criterion benchmarks.

use maxint_core::models::{gen_hier_collection, gen_zipf_collection, HierParams, ZipfParams};
use maxint_core::{Collection, Document, ModelSpec, RngState};

pub fn zipf_collection(n: usize, seed: u64) -> Collection {
    gen_zipf_collection(&ZipfParams::new(n, n as u32, seed).expect("valid zipf params"))
}

pub fn hier_collection(k: u32, seed: u64) -> Collection {
    gen_hier_collection(&HierParams::new(k, seed).expect("valid hierarchical params"))
}

/// `count` queries drawn from the model, independent of the collection seed.
pub fn queries(model: ModelSpec, count: usize, seed: u64) -> Vec<Document> {
    (0..count)
        .map(|i| model.document(&mut RngState::derive(seed, i as u64)))
        .collect()
}
