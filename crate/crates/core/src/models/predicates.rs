use rand::Rng;

use crate::document::{Document, TermRank};
use crate::error::{Error, Result};

/// Rank range `[ceil(e^(i-1)), floor(e^i)]` of exponential group `P_i`.
pub fn regular_group(i: u32) -> (u32, u32) {
    let lo = ((i as f64 - 1.0).exp()).ceil() as u32;
    let hi = (i as f64).exp().floor() as u32;
    (lo, hi)
}

fn group_count(m: u32) -> u32 {
    (m as f64).ln().floor() as u32
}

/// Exactly `floor(ln m)` terms, one in each of `P_1 .. P_L`.
pub fn is_regular(d: &Document, m: u32) -> bool {
    let groups = group_count(m);
    d.len() == groups as usize
        && d.terms().iter().zip(1..=groups).all(|(t, i)| {
            let (lo, hi) = regular_group(i);
            (lo..=hi).contains(&t.get())
        })
}

/// Uniform regular document: one uniform term from each group.
pub fn gen_regular_document<R: Rng + ?Sized>(m: u32, rng: &mut R) -> Result<Document> {
    if m < 3 {
        return Err(Error::InvalidParams(format!(
            "regular documents need m >= 3 (got {m})"
        )));
    }
    let terms = (1..=group_count(m))
        .map(|i| {
            let (lo, hi) = regular_group(i);
            TermRank::from_u32(rng.random_range(lo..=hi))
        })
        .collect();
    Ok(Document::from_sorted(terms))
}

/// Integer grid `i` on which the genericity condition
/// `|{t_j in d : j <= e^i}| >= (1 - delta) i` is checked.
///
/// The grid runs from `ceil(delta * sqrt(2 ln n))` to `ceil(sqrt(2 ln n))`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GenericityWindow {
    pub delta: f64,
    pub lower: u32,
    pub upper: u32,
}

impl GenericityWindow {
    pub fn new(delta: f64, n: u64) -> Self {
        Self::from_ln_n(delta, (n as f64).ln())
    }

    /// Same window for a real-valued `ln n`.
    pub fn from_ln_n(delta: f64, ln_n: f64) -> Self {
        let q = (2.0 * ln_n).sqrt();
        GenericityWindow {
            delta,
            lower: (delta * q).ceil() as u32,
            upper: q.ceil() as u32,
        }
    }

    pub fn accepts(&self, d: &Document) -> bool {
        (self.lower..=self.upper)
            .all(|i| count_up_to(d, i) as f64 >= (1.0 - self.delta) * i as f64)
    }
}

/// Number of terms of `d` with rank at most `e^i`.
fn count_up_to(d: &Document, i: u32) -> usize {
    let bound = (i as f64).exp().floor();
    let bound = if bound >= u32::MAX as f64 { u32::MAX } else { bound as u32 };
    d.terms().partition_point(|t| t.get() <= bound)
}

pub fn is_delta_n_generic(d: &Document, delta: f64, n: u64) -> bool {
    GenericityWindow::new(delta, n).accepts(d)
}

/// `|{t_j in d : j <= e^i}| >= i` for every integer `1 <= i <= sqrt(2 ln n)`.
pub fn has_full_prefix_density(d: &Document, ln_n: f64) -> bool {
    let top = (2.0 * ln_n).sqrt().floor() as u32;
    (1..=top).all(|i| count_up_to(d, i) >= i as usize)
}

/// Adds the `count` smallest ranks missing from `d`.
pub fn extend_with_missing_prefix_terms(d: &Document, count: usize) -> Document {
    let mut out = Vec::with_capacity(d.len() + count);
    let mut existing = d.terms().iter().peekable();
    let mut added = 0;
    let mut rank = 1u32;
    while added < count {
        match existing.peek() {
            Some(t) if t.get() == rank => {
                out.push(**t);
                existing.next();
            }
            _ => {
                out.push(TermRank::from_u32(rank));
                added += 1;
            }
        }
        rank += 1;
    }
    out.extend(existing.copied());
    Document::from_sorted(out)
}
