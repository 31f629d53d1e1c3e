//! Monte-Carlo experiments: matching-level probability curves, genericity
//! rates, index accuracy against the oracle and the hierarchical Zipf's-law
//! check.
//!
//! Every trial draws from its own derived random stream and results are
//! merged by counting, so serial and parallel runs agree bit for bit.

mod accuracy;
mod curves;
mod genericity;
mod zipflaw;

pub use accuracy::{accuracy_experiment, accuracy_over, AccuracySummary};
pub use curves::{
    estimate_curves, find_crossover, trial_maxima, CollectionMode, CrossoverReport, CurveData,
    TrialMaxima,
};
pub use genericity::{genericity_rate, GenericityRow};
pub use zipflaw::{zipf_law_check, ZipfLawRow};

/// Seed domains for [`crate::rng::sub_seed`].
pub(crate) mod domain {
    pub const COLLECTION: u64 = 0;
    pub const QUERY: u64 = 1;
    pub const FRESH_COLLECTION: u64 = 2;
}
