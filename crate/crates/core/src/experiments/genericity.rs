use rayon::prelude::*;

use crate::document::Document;
use crate::error::{Error, Result};
use crate::models::{
    extend_with_missing_prefix_terms, gen_zipf_document, has_full_prefix_density, lemma1_bound,
    GenericityWindow,
};
use crate::rng::RngState;

/// Empirical genericity rates for one collection size `n`.
#[derive(Debug, Clone, PartialEq)]
pub struct GenericityRow {
    pub n: u64,
    /// Fraction of sampled documents that are delta-n-generic.
    pub plain_rate: f64,
    /// Same after adding the `ceil(delta sqrt(2 ln n))` smallest missing ranks.
    pub extended_rate: f64,
    /// Extended documents with at least `i` ranks below `e^i` for every
    /// `i <= sqrt(2 ln n)`.
    pub density_rate: f64,
    /// Analytic lower bound on `plain_rate`; negative means vacuous.
    pub bound: f64,
}

/// The same `samples` Zipf documents (stream `derive(seed, i)`) are tested
/// against every `n` of the grid.
pub fn genericity_rate(
    delta: f64,
    n_grid: &[u64],
    m: u32,
    samples: usize,
    seed: u64,
) -> Result<Vec<GenericityRow>> {
    if !(delta > 0.0 && delta < 1.0) || samples == 0 || m == 0 {
        return Err(Error::InvalidParams(format!(
            "need 0 < delta < 1, samples >= 1, m >= 1 (got {delta}, {samples}, {m})"
        )));
    }
    if let Some(&n) = n_grid.iter().find(|&&n| n < 2) {
        return Err(Error::InvalidParams(format!("n must be >= 2 (got {n})")));
    }
    let docs: Vec<Document> = (0..samples)
        .into_par_iter()
        .map(|i| gen_zipf_document(m, &mut RngState::derive(seed, i as u64)))
        .collect();

    Ok(n_grid
        .iter()
        .map(|&n| {
            let ln_n = (n as f64).ln();
            let window = GenericityWindow::from_ln_n(delta, ln_n);
            let insert = (delta * (2.0 * ln_n).sqrt()).ceil() as usize;
            let (mut plain, mut extended, mut density) = (0usize, 0usize, 0usize);
            for d in &docs {
                plain += window.accepts(d) as usize;
                let ext = extend_with_missing_prefix_terms(d, insert);
                extended += window.accepts(&ext) as usize;
                density += has_full_prefix_density(&ext, ln_n) as usize;
            }
            let rate = |count: usize| count as f64 / samples as f64;
            GenericityRow {
                n,
                plain_rate: rate(plain),
                extended_rate: rate(extended),
                density_rate: rate(density),
                bound: lemma1_bound(delta, n as f64),
            }
        })
        .collect())
}
