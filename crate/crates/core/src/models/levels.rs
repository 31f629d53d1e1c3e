use crate::error::{Error, Result};

/// Zipf matching level `sqrt(2 ln n)`.
pub fn zipf_matching_level(n: f64) -> f64 {
    zipf_matching_level_ln(n.ln())
}

pub fn zipf_matching_level_ln(ln_n: f64) -> f64 {
    (2.0 * ln_n).sqrt()
}

/// Hierarchical matching levels `(k / (1 + log2 k), k / log2 k)`.
pub fn hier_matching_levels(k: u32) -> (f64, f64) {
    let k = k as f64;
    let lg = k.log2();
    (k / (1.0 + lg), k / lg)
}

/// Expected frequency times expected frequency rank of a level-`level` term,
/// divided by the collection size: `(1.5 * 2^(i-1) - 1) / 2^(i-1)`.
pub fn hier_zipf_law_product(level: u32, k: u32) -> Result<f64> {
    if level == 0 || level > k || level > 63 {
        return Err(Error::InvalidParams(format!(
            "level {level} outside 1..={k}"
        )));
    }
    let cells = (1u64 << (level - 1)) as f64;
    Ok((1.5 * cells - 1.0) / cells)
}

/// `H_m = sum_{i=1}^m 1/i`, summed from the small terms up.
pub fn harmonic_number(m: u64) -> f64 {
    (1..=m).rev().map(|i| 1.0 / i as f64).sum()
}

/// Constants of the Zipf prefix/any-match threshold statements.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZipfThresholdParams {
    pub delta: f64,
    pub epsilon: f64,
}

impl ZipfThresholdParams {
    pub fn new(delta: f64, epsilon: f64) -> Result<Self> {
        if !(delta > 0.0 && delta < 1.0) || epsilon.is_nan() || epsilon <= 0.0 {
            return Err(Error::InvalidParams(format!(
                "need 0 < delta < 1 and epsilon > 0 (got {delta}, {epsilon})"
            )));
        }
        Ok(ZipfThresholdParams { delta, epsilon })
    }

    /// `2 + delta * sqrt(2 ln n)`: how far below `q_n` a prefix match is assured.
    pub fn gamma(&self, n: f64) -> f64 {
        2.0 + self.delta * zipf_matching_level(n)
    }

    /// `e^(-delta^2 / 2)`.
    pub fn c(&self) -> f64 {
        (-self.delta * self.delta / 2.0).exp()
    }

    /// Prefix length `q_n - gamma` (may be negative at small `n`).
    pub fn prefix_level(&self, n: f64) -> f64 {
        zipf_matching_level(n) - self.gamma(n)
    }

    /// `(1 + epsilon) q_n`, above which any-matches vanish.
    pub fn any_level(&self, n: f64) -> f64 {
        (1.0 + self.epsilon) * zipf_matching_level(n)
    }
}

/// `1 - c^(1.4 delta sqrt(ln n)) / (1 - c)` with `c = e^(-delta^2/2)`;
/// negative (vacuous) at small `n`.
pub fn lemma1_bound(delta: f64, n: f64) -> f64 {
    let c = (-delta * delta / 2.0).exp();
    1.0 - c.powf(1.4 * delta * n.ln().sqrt()) / (1.0 - c)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zipf_level() {
        assert!((zipf_matching_level(2f64.exp()) - 2.0).abs() < 1e-12);
        let q = zipf_matching_level(50_000.0);
        assert!((q - 4.651_8).abs() < 1e-4, "{q}");
        assert!(zipf_matching_level(10.0) < zipf_matching_level(11.0));
    }

    #[test]
    fn hier_levels() {
        let (q, q2) = hier_matching_levels(16);
        assert!((q - 3.2).abs() < 1e-12 && (q2 - 4.0).abs() < 1e-12);
        let (q, q2) = hier_matching_levels(8);
        assert!((q - 2.0).abs() < 1e-12 && (q2 - 8.0 / 3.0).abs() < 1e-12);
        for k in 2..=64 {
            let (q, q2) = hier_matching_levels(k);
            assert!(q < q2);
        }
    }

    #[test]
    fn zipf_law_products() {
        assert_eq!(hier_zipf_law_product(1, 16).unwrap(), 0.5);
        assert_eq!(hier_zipf_law_product(2, 16).unwrap(), 1.0);
        for k in 2..=40 {
            for level in 1..=k {
                let p = hier_zipf_law_product(level, k).unwrap();
                assert!((0.5..1.5).contains(&p), "level {level} k {k}: {p}");
            }
        }
        assert!(hier_zipf_law_product(0, 4).is_err());
        assert!(hier_zipf_law_product(5, 4).is_err());
    }

    #[test]
    fn harmonic() {
        assert_eq!(harmonic_number(1), 1.0);
        assert_eq!(harmonic_number(2), 1.5);
        // ln(1e5) + Euler-Mascheroni + 1/(2m) - 1/(12 m^2)
        let asymptotic = 100_000f64.ln() + 0.577_215_664_901_532_9 + 5e-6 - 1.0 / 1.2e11;
        assert!((harmonic_number(100_000) - asymptotic).abs() < 1e-9);
        assert!((harmonic_number(100_000) - 12.0901).abs() < 1e-4);
    }

    #[test]
    fn threshold_constants() {
        let p = ZipfThresholdParams::new(0.5, 0.1).unwrap();
        assert!((p.c() - (-0.125f64).exp()).abs() < 1e-15);
        assert!(p.c() > (-0.5f64).exp() && p.c() < 1.0);
        let n = 2f64.exp();
        assert!((p.gamma(n) - 3.0).abs() < 1e-12);
        assert!((p.prefix_level(n) + 1.0).abs() < 1e-12);
        assert!((p.any_level(n) - 2.2).abs() < 1e-12);
        assert!(ZipfThresholdParams::new(1.0, 0.1).is_err());
        assert!(ZipfThresholdParams::new(0.5, 0.0).is_err());
    }

    #[test]
    fn lemma1_is_vacuous_at_desk_scale() {
        let c = (-0.125f64).exp();
        let expected = 1.0 - c.powf(0.7 * 100_000f64.ln().sqrt()) / (1.0 - c);
        let b = lemma1_bound(0.5, 1e5);
        assert_eq!(b, expected);
        assert!(b < 0.0);
        assert!((1.0 - b - 0.743 / 0.1175).abs() < 0.01);
    }
}
