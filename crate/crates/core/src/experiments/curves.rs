use std::ops::RangeInclusive;

use rayon::prelude::*;

use super::domain;
use crate::document::{Collection, Document};
use crate::error::{Error, Result};
use crate::index::PrefixIndex;
use crate::models::{hier_matching_levels, zipf_matching_level, ModelSpec};
use crate::oracle::Oracle;
use crate::rng::{sub_seed, RngState};

/// Whether every trial gets its own collection or all trials share one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CollectionMode {
    #[default]
    Shared,
    FreshPerTrial,
}

impl CollectionMode {
    pub fn name(&self) -> &'static str {
        match self {
            CollectionMode::Shared => "shared",
            CollectionMode::FreshPerTrial => "fresh_per_trial",
        }
    }
}

/// Best scores any collection document reaches against one query.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct TrialMaxima {
    pub any: usize,
    pub prefix: usize,
    pub lcp: usize,
    pub query_len: usize,
}

/// Empirical probabilities of a q-match, per `q`.
#[derive(Debug, Clone, PartialEq)]
pub struct CurveData {
    pub model: ModelSpec,
    pub seed: u64,
    pub mode: CollectionMode,
    pub trials: usize,
    pub q_values: Vec<usize>,
    /// Some document shares at least `q` terms with the query.
    pub p_any: Vec<f64>,
    /// Some document contains the query's first `q` terms.
    pub p_prefix: Vec<f64>,
    /// The index finds a literal common prefix of length `q`.
    pub p_lcp: Vec<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CrossoverReport {
    pub q_any_star: Option<usize>,
    pub q_prefix_star: Option<usize>,
    /// `q_any_star - q_prefix_star`, signed.
    pub gap: Option<i64>,
    pub theory_q: f64,
}

/// Scores of the collection's best documents against `query`.
pub fn trial_maxima(oracle: &Oracle<'_>, index: &PrefixIndex<'_>, query: &Document) -> Result<TrialMaxima> {
    let any = oracle.max_intersection(query)?.intersection;
    let (prefix, _) = oracle.max_containment_prefix(query)?;
    let (found, _) = index.query(query)?;
    Ok(TrialMaxima {
        any,
        prefix,
        lcp: found.lcp,
        query_len: query.len(),
    })
}

fn run_trial(collection: &Collection, model: &ModelSpec, query_seed: u64, trial: usize) -> Result<TrialMaxima> {
    let query = model.document(&mut RngState::derive(query_seed, trial as u64));
    let oracle = Oracle::new(collection);
    let index = PrefixIndex::build(collection);
    trial_maxima(&oracle, &index, &query)
}

pub fn estimate_curves(
    model: ModelSpec,
    q_range: RangeInclusive<usize>,
    trials: usize,
    mode: CollectionMode,
    base_seed: u64,
) -> Result<CurveData> {
    if trials == 0 || q_range.is_empty() {
        return Err(Error::InvalidParams(
            "curve estimation needs trials >= 1 and a non-empty q range".into(),
        ));
    }
    model.validate()?;
    let query_seed = sub_seed(base_seed, domain::QUERY);

    let maxima: Vec<TrialMaxima> = match mode {
        CollectionMode::Shared => {
            let collection = model.collection(sub_seed(base_seed, domain::COLLECTION))?;
            let oracle = Oracle::new(&collection);
            let index = PrefixIndex::build(&collection);
            (0..trials)
                .into_par_iter()
                .map(|t| {
                    let query = model.document(&mut RngState::derive(query_seed, t as u64));
                    trial_maxima(&oracle, &index, &query)
                })
                .collect::<Result<_>>()?
        }
        CollectionMode::FreshPerTrial => {
            let fresh = sub_seed(base_seed, domain::FRESH_COLLECTION);
            (0..trials)
                .into_par_iter()
                .map(|t| {
                    let collection = model.collection(sub_seed(fresh, t as u64))?;
                    run_trial(&collection, &model, query_seed, t)
                })
                .collect::<Result<_>>()?
        }
    };

    let q_values: Vec<usize> = q_range.collect();
    let survival = |score: fn(&TrialMaxima) -> usize| -> Vec<f64> {
        q_values
            .iter()
            .map(|&q| maxima.iter().filter(|m| score(m) >= q).count() as f64 / trials as f64)
            .collect()
    };
    Ok(CurveData {
        model,
        seed: base_seed,
        mode,
        trials,
        p_any: survival(|m| m.any),
        p_prefix: survival(|m| m.prefix),
        p_lcp: survival(|m| m.lcp),
        q_values,
    })
}

/// Smallest `q` whose probability drops below one half.
pub fn find_crossover(curve: &[(usize, f64)]) -> Option<usize> {
    curve.iter().find(|&&(_, p)| p < 0.5).map(|&(q, _)| q)
}

impl CurveData {
    pub fn any_curve(&self) -> Vec<(usize, f64)> {
        self.q_values.iter().copied().zip(self.p_any.iter().copied()).collect()
    }

    pub fn prefix_curve(&self) -> Vec<(usize, f64)> {
        self.q_values.iter().copied().zip(self.p_prefix.iter().copied()).collect()
    }

    pub fn lcp_curve(&self) -> Vec<(usize, f64)> {
        self.q_values.iter().copied().zip(self.p_lcp.iter().copied()).collect()
    }

    /// Crossovers of the any-match and prefix-containment curves, next to
    /// the model's matching level (`sqrt(2 ln n)` for Zipf, `k/(1+log2 k)`
    /// for the hierarchical scheme).
    pub fn crossover_report(&self) -> CrossoverReport {
        let q_any_star = find_crossover(&self.any_curve());
        let q_prefix_star = find_crossover(&self.prefix_curve());
        let gap = match (q_any_star, q_prefix_star) {
            (Some(a), Some(p)) => Some(a as i64 - p as i64),
            _ => None,
        };
        let theory_q = match self.model {
            ModelSpec::Zipf { n, .. } => zipf_matching_level(n as f64),
            ModelSpec::Hier { k, .. } => hier_matching_levels(k).0,
        };
        CrossoverReport {
            q_any_star,
            q_prefix_star,
            gap,
            theory_q,
        }
    }

    /// Probability at `q` on the any-match curve, if `q` was evaluated.
    pub fn p_any_at(&self, q: usize) -> Option<f64> {
        self.q_values.iter().position(|&x| x == q).map(|i| self.p_any[i])
    }

    pub fn p_prefix_at(&self, q: usize) -> Option<f64> {
        self.q_values.iter().position(|&x| x == q).map(|i| self.p_prefix[i])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn crossover_examples() {
        assert_eq!(find_crossover(&[(1, 1.0), (2, 1.0), (3, 0.8), (4, 0.3)]), Some(4));
        assert_eq!(find_crossover(&[(1, 1.0), (2, 0.5)]), None);
        assert_eq!(find_crossover(&[(1, 0.2)]), Some(1));
        assert_eq!(find_crossover(&[]), None);
    }

    #[test]
    fn small_zipf_curve_shape() {
        let model = ModelSpec::Zipf { n: 500, m: 500 };
        let cd = estimate_curves(model, 0..=20, 60, CollectionMode::Shared, 3).unwrap();
        assert_eq!(cd.q_values.len(), 21);
        assert_eq!(cd.p_any[0], 1.0);
        assert_eq!(cd.p_any_at(1), Some(1.0));
        assert_eq!(*cd.p_any.last().unwrap(), 0.0);
        for i in 0..cd.q_values.len() {
            assert!(cd.p_lcp[i] <= cd.p_prefix[i] && cd.p_prefix[i] <= cd.p_any[i]);
            if i > 0 {
                assert!(cd.p_any[i] <= cd.p_any[i - 1]);
                assert!(cd.p_prefix[i] <= cd.p_prefix[i - 1]);
                assert!(cd.p_lcp[i] <= cd.p_lcp[i - 1]);
            }
        }
    }

    #[test]
    fn fresh_mode_runs_and_is_deterministic() {
        let model = ModelSpec::Hier { k: 6, n: 64 };
        let a = estimate_curves(model, 1..=7, 20, CollectionMode::FreshPerTrial, 9).unwrap();
        let b = estimate_curves(model, 1..=7, 20, CollectionMode::FreshPerTrial, 9).unwrap();
        assert_eq!(a, b);
        // hierarchical documents have exactly k terms
        assert_eq!(a.p_any_at(7), Some(0.0));
    }

    #[test]
    fn rejects_empty_inputs() {
        let model = ModelSpec::Zipf { n: 10, m: 10 };
        assert!(estimate_curves(model, 1..=5, 0, CollectionMode::Shared, 0).is_err());
        #[allow(clippy::reversed_empty_ranges)]
        let empty = 5..=1;
        assert!(estimate_curves(model, empty, 5, CollectionMode::Shared, 0).is_err());
    }
}
