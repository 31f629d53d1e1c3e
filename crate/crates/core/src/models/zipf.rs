use rand::distr::Open01;
use rand::Rng;
use rayon::prelude::*;

use crate::document::{Collection, Document, ModelTag, TermRank};
use crate::error::{Error, Result};
use crate::rng::RngState;

/// Parameters of the Zipf model: `n` documents over `m` terms, term `t_i`
/// present in each document independently with probability `1/i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ZipfParams {
    pub n: usize,
    pub m: u32,
    pub seed: u64,
}

impl ZipfParams {
    pub fn new(n: usize, m: u32, seed: u64) -> Result<Self> {
        if n == 0 || m == 0 {
            return Err(Error::InvalidParams(format!(
                "zipf model needs n >= 1 and m >= 1 (got n={n}, m={m})"
            )));
        }
        Ok(ZipfParams { n, m, seed })
    }

    /// `m > n^3` leaves the polynomial regime the model is meant for.
    pub fn outside_polynomial_regime(&self) -> bool {
        (self.m as f64) > (self.n as f64).powi(3)
    }
}

/// Next included term after `current`, or `None` past `m`.
///
/// Uses the skip law `P(next > j | at i) = i / j`: with `U ~ Uniform(0,1)`
/// the next index is `floor(i / U) + 1`. From `i = 0` the answer is always 1.
pub fn zipf_next_included<R: Rng + ?Sized>(current: u32, m: u32, rng: &mut R) -> Option<u32> {
    if current == 0 {
        return (m >= 1).then_some(1);
    }
    let u: f64 = rng.sample(Open01);
    let ratio = current as f64 / u;
    if ratio >= m as f64 {
        return None;
    }
    Some(ratio as u32 + 1)
}

/// One Zipf document over ranks `1..=m`, in `O(H_m)` expected time.
pub fn gen_zipf_document<R: Rng + ?Sized>(m: u32, rng: &mut R) -> Document {
    let mut terms = Vec::with_capacity(16);
    let mut current = 0;
    while let Some(next) = zipf_next_included(current, m, rng) {
        terms.push(TermRank::from_u32(next));
        current = next;
    }
    Document::from_sorted(terms)
}

/// Reference sampler: one Bernoulli(1/i) draw per term, `O(m)`.
pub fn gen_zipf_document_naive<R: Rng + ?Sized>(m: u32, rng: &mut R) -> Document {
    let terms = (1..=m)
        .filter(|&i| rng.random::<f64>() * (i as f64) < 1.0)
        .map(TermRank::from_u32)
        .collect();
    Document::from_sorted(terms)
}

/// `n` documents, document `i` drawn from stream `derive(seed, i)`.
pub fn gen_zipf_collection(p: &ZipfParams) -> Collection {
    let docs = (0..p.n)
        .into_par_iter()
        .map(|i| gen_zipf_document(p.m, &mut RngState::derive(p.seed, i as u64)))
        .collect();
    Collection::new(
        docs,
        ModelTag::Zipf {
            n: p.n,
            m: p.m,
            seed: p.seed,
        },
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::harmonic_number;

    #[test]
    fn from_zero_always_one() {
        let mut rng = RngState::from_seed(3);
        for _ in 0..100 {
            assert_eq!(zipf_next_included(0, 10, &mut rng), Some(1));
        }
    }

    #[test]
    fn nothing_after_last_term() {
        let mut rng = RngState::from_seed(3);
        for _ in 0..100 {
            assert_eq!(zipf_next_included(1, 1, &mut rng), None);
        }
    }

    #[test]
    fn next_is_strictly_greater_and_bounded() {
        let mut rng = RngState::from_seed(11);
        for i in 1..200u32 {
            if let Some(j) = zipf_next_included(i, 500, &mut rng) {
                assert!(j > i && j <= 500);
            }
        }
    }

    #[test]
    fn skip_from_one_lands_on_two_half_the_time() {
        // Naive oracle: starting after t_1, the next included term is t_2
        // exactly when the Bernoulli(1/2) draw for t_2 succeeds.
        let trials = 100_000;
        let mut rng = RngState::from_seed(5);
        let hits = (0..trials)
            .filter(|_| zipf_next_included(1, 50, &mut rng) == Some(2))
            .count();
        let p = hits as f64 / trials as f64;
        let sigma = (0.25 / trials as f64).sqrt();
        assert!((p - 0.5).abs() < 3.0 * sigma, "p={p}");
    }

    #[test]
    fn m_one_is_singleton() {
        let mut rng = RngState::from_seed(0);
        for _ in 0..50 {
            assert_eq!(gen_zipf_document(1, &mut rng).ranks().collect::<Vec<_>>(), vec![1]);
        }
    }

    #[test]
    fn documents_contain_rank_one_and_are_canonical() {
        let mut rng = RngState::from_seed(9);
        for _ in 0..1000 {
            let d = gen_zipf_document(1000, &mut rng);
            assert_eq!(d.terms()[0].get(), 1);
            assert!(d.terms().windows(2).all(|w| w[0] < w[1]));
            assert!(d.terms().last().unwrap().get() <= 1000);
        }
    }

    #[test]
    fn mean_size_tracks_harmonic_number() {
        let m = 100_000;
        let docs = 20_000;
        let mut rng = RngState::from_seed(2024);
        let total: usize = (0..docs).map(|_| gen_zipf_document(m, &mut rng).len()).sum();
        let mean = total as f64 / docs as f64;
        let h = harmonic_number(m as u64);
        assert!((mean - h).abs() / h < 0.02, "mean={mean} H={h}");
    }

    #[test]
    fn collection_is_deterministic() {
        let p = ZipfParams::new(300, 1000, 77).unwrap();
        assert_eq!(gen_zipf_collection(&p), gen_zipf_collection(&p));
        let c = gen_zipf_collection(&ZipfParams::new(1, 10, 1).unwrap());
        assert_eq!(c.len(), 1);
    }

    #[test]
    fn rejects_degenerate_params() {
        assert!(ZipfParams::new(0, 10, 0).is_err());
        assert!(ZipfParams::new(10, 0, 0).is_err());
        assert!(ZipfParams::new(2, 9, 0).unwrap().outside_polynomial_regime());
        assert!(!ZipfParams::new(2, 8, 0).unwrap().outside_polynomial_regime());
    }
}
