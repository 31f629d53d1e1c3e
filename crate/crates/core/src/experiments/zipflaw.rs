use crate::error::Result;
use crate::models::{gen_hier_collection, hier_universe, hier_zipf_law_product, HierParams};

/// Frequency-times-rank product of one level of the hierarchical scheme.
#[derive(Debug, Clone, PartialEq)]
pub struct ZipfLawRow {
    pub level: u32,
    pub analytic: f64,
    /// Mean term frequency times mean frequency rank, divided by `n`.
    pub empirical: f64,
    pub deviation: f64,
}

/// Compares the analytic per-level product with a generated collection.
///
/// Ranks come from sorting every term of the universe by descending
/// frequency, ties by ascending id.
pub fn zipf_law_check(k: u32, n: usize, seed: u64) -> Result<Vec<ZipfLawRow>> {
    let params = HierParams::new(k, seed)?.with_n(n)?;
    let collection = gen_hier_collection(&params);
    let universe = hier_universe(k) as usize;

    let mut freq = vec![0u64; universe + 1];
    for d in collection.docs() {
        for t in d.terms() {
            freq[t.get() as usize] += 1;
        }
    }
    let mut by_freq: Vec<usize> = (1..=universe).collect();
    by_freq.sort_by(|&a, &b| freq[b].cmp(&freq[a]).then(a.cmp(&b)));
    let mut rank = vec![0u64; universe + 1];
    for (pos, &term) in by_freq.iter().enumerate() {
        rank[term] = pos as u64 + 1;
    }

    (1..=k)
        .map(|level| {
            let first = ((1usize << (level - 1)) - 1) * k as usize + 1;
            let last = ((1usize << level) - 1) * k as usize;
            let count = (last - first + 1) as f64;
            let mean_freq = freq[first..=last].iter().sum::<u64>() as f64 / count;
            let mean_rank = rank[first..=last].iter().sum::<u64>() as f64 / count;
            let analytic = hier_zipf_law_product(level, k)?;
            let empirical = mean_freq * mean_rank / n as f64;
            Ok(ZipfLawRow {
                level,
                analytic,
                empirical,
                deviation: (empirical - analytic).abs(),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn level_one_and_interval() {
        let rows = zipf_law_check(10, 1 << 10, 3).unwrap();
        assert_eq!(rows.len(), 10);
        assert_eq!(rows[0].analytic, 0.5);
        assert!(rows.iter().all(|r| (0.5..1.5).contains(&r.analytic)));
        assert!(rows[0].deviation < 0.2);
    }
}
