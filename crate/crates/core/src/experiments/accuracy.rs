use rayon::prelude::*;

use super::domain;
use crate::document::{intersection_size, Collection, Document};
use crate::error::{Error, Result};
use crate::index::PrefixIndex;
use crate::models::ModelSpec;
use crate::oracle::Oracle;
use crate::rng::{sub_seed, RngState};

/// Distribution of `|query ∩ index answer| / max(1, exact maximum)`.
#[derive(Debug, Clone, PartialEq)]
pub struct AccuracySummary {
    pub trials: usize,
    pub mean_ratio: f64,
    pub min_ratio: f64,
    pub p10_ratio: f64,
    pub median_ratio: f64,
    pub p90_ratio: f64,
    /// Fraction of queries where the index answer attains the maximum.
    pub exact_hit_fraction: f64,
}

/// Nearest-rank quantile of an ascending slice.
fn quantile(sorted: &[f64], p: f64) -> f64 {
    let rank = (p * sorted.len() as f64).ceil().max(1.0) as usize;
    sorted[rank.min(sorted.len()) - 1]
}

/// Accuracy of the prefix index over a fixed list of queries.
pub fn accuracy_over(collection: &Collection, queries: &[Document]) -> Result<AccuracySummary> {
    if queries.is_empty() {
        return Err(Error::InvalidParams("need at least one query".into()));
    }
    let oracle = Oracle::new(collection);
    let index = PrefixIndex::build(collection);
    let per_query = queries
        .par_iter()
        .map(|q| {
            let best = oracle.max_intersection(q)?.intersection;
            let (found, _) = index.query(q)?;
            let got = intersection_size(q, collection.get(found.doc_index));
            Ok((got as f64 / best.max(1) as f64, got == best))
        })
        .collect::<Result<Vec<_>>>()?;

    let mut ratios: Vec<f64> = per_query.iter().map(|&(r, _)| r).collect();
    let hits = per_query.iter().filter(|&&(_, hit)| hit).count();
    let mean_ratio = ratios.iter().sum::<f64>() / ratios.len() as f64;
    ratios.sort_by(f64::total_cmp);
    Ok(AccuracySummary {
        trials: queries.len(),
        mean_ratio,
        min_ratio: ratios[0],
        p10_ratio: quantile(&ratios, 0.1),
        median_ratio: quantile(&ratios, 0.5),
        p90_ratio: quantile(&ratios, 0.9),
        exact_hit_fraction: hits as f64 / queries.len() as f64,
    })
}

/// One shared collection, `trials` fresh model queries.
pub fn accuracy_experiment(model: ModelSpec, trials: usize, seed: u64) -> Result<AccuracySummary> {
    let collection = model.collection(sub_seed(seed, domain::COLLECTION))?;
    let query_seed = sub_seed(seed, domain::QUERY);
    let queries: Vec<Document> = (0..trials)
        .map(|t| model.document(&mut RngState::derive(query_seed, t as u64)))
        .collect();
    accuracy_over(&collection, &queries)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stored_documents_are_found_exactly() {
        let model = ModelSpec::Zipf { n: 300, m: 300 };
        let c = model.collection(1).unwrap();
        let queries: Vec<Document> = c.docs().iter().take(50).cloned().collect();
        let s = accuracy_over(&c, &queries).unwrap();
        assert_eq!(s.mean_ratio, 1.0);
        assert_eq!(s.exact_hit_fraction, 1.0);
    }

    #[test]
    fn ratios_never_exceed_one() {
        let s = accuracy_experiment(ModelSpec::Hier { k: 8, n: 256 }, 100, 4).unwrap();
        assert!(s.min_ratio >= 0.0 && s.p90_ratio <= 1.0 && s.mean_ratio <= 1.0);
        assert!(s.min_ratio <= s.p10_ratio && s.p10_ratio <= s.median_ratio);
        assert!(s.median_ratio <= s.p90_ratio);
    }

    #[test]
    fn quantiles() {
        let v = [0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0];
        assert_eq!(quantile(&v, 0.1), 0.1);
        assert_eq!(quantile(&v, 0.5), 0.5);
        assert_eq!(quantile(&v, 0.9), 0.9);
        assert_eq!(quantile(&[0.3], 0.5), 0.3);
    }
}
