//! Acceptance criteria as runnable checks.
//!
//! Each check returns a one-line detail on success and a reason on
//! failure. Tolerances and sizes are fixed here.

use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::{Duration, Instant};

use maxint_core::experiments::{
    estimate_curves, genericity_rate, zipf_law_check, CollectionMode,
};
use maxint_core::io::{decode_collection, encode_collection, render_curve_svg, write_curve_csv};
use maxint_core::models::{
    cell_path, gen_hier_collection, gen_zipf_collection, gen_zipf_document,
    gen_zipf_document_naive, harmonic_number, hier_matching_levels, hier_zipf_law_product,
    zipf_matching_level, HierParams, ZipfParams,
};
use maxint_core::oracle::brute_force_max_lcp;
use maxint_core::rng::sub_seed;
use maxint_core::{
    canonicalize, containment_prefix_len, intersection_size, lcp_length, reverse_order_metric,
    Collection, Document, ModelSpec, PrefixIndex, RngState,
};
use rand::Rng;

pub type Outcome = Result<String, String>;

/// What the checks need from their environment.
#[derive(Debug, Clone)]
pub struct Context {
    /// Path of the `maxint` executable, for the end-to-end checks.
    pub bin: PathBuf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Oracle,
    Thresholds,
    Genericity,
    ZipfLaw,
    Determinism,
}

impl Suite {
    pub fn parse(name: &str) -> Option<Vec<Suite>> {
        Some(match name {
            "oracle" => vec![Suite::Oracle],
            "thresholds" => vec![Suite::Thresholds],
            "genericity" => vec![Suite::Genericity],
            "zipflaw" => vec![Suite::ZipfLaw],
            "determinism" => vec![Suite::Determinism],
            "all" => vec![
                Suite::Oracle,
                Suite::Thresholds,
                Suite::Genericity,
                Suite::ZipfLaw,
                Suite::Determinism,
            ],
            _ => return None,
        })
    }
}

pub struct Criterion {
    pub id: u32,
    pub name: &'static str,
    pub suite: Suite,
    pub time_limit: Option<Duration>,
    pub run: fn(&Context) -> Outcome,
}

pub const CRITERIA: &[Criterion] = &[
    Criterion { id: 1, name: "zipf marginals", suite: Suite::Genericity, time_limit: Some(Duration::from_secs(30)), run: zipf_marginals },
    Criterion { id: 2, name: "skip sampler equivalence", suite: Suite::Genericity, time_limit: Some(Duration::from_secs(30)), run: skip_sampler_equivalence },
    Criterion { id: 3, name: "index-oracle equivalence", suite: Suite::Oracle, time_limit: Some(Duration::from_secs(60)), run: index_oracle_equivalence },
    Criterion { id: 4, name: "match-notion chain", suite: Suite::Oracle, time_limit: None, run: match_notion_chain },
    Criterion { id: 5, name: "query complexity", suite: Suite::Oracle, time_limit: None, run: query_complexity },
    Criterion { id: 6, name: "zipf threshold phenomenon", suite: Suite::Thresholds, time_limit: Some(Duration::from_secs(120)), run: zipf_thresholds },
    Criterion { id: 7, name: "hierarchical structure", suite: Suite::Thresholds, time_limit: None, run: hier_structure },
    Criterion { id: 8, name: "hierarchical thresholds", suite: Suite::Thresholds, time_limit: Some(Duration::from_secs(180)), run: hier_thresholds },
    Criterion { id: 9, name: "hierarchical zipf law", suite: Suite::ZipfLaw, time_limit: None, run: hier_zipf_law },
    Criterion { id: 10, name: "genericity dominance", suite: Suite::Genericity, time_limit: None, run: genericity_dominance },
    Criterion { id: 11, name: "cli determinism", suite: Suite::Determinism, time_limit: None, run: cli_determinism },
    Criterion { id: 12, name: "metric properties", suite: Suite::Oracle, time_limit: None, run: metric_properties },
    Criterion { id: 13, name: "round trips", suite: Suite::Determinism, time_limit: None, run: round_trips },
];

#[derive(Debug, Clone)]
pub struct Report {
    pub id: u32,
    pub name: &'static str,
    pub elapsed: Duration,
    pub outcome: Outcome,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.outcome.is_ok()
    }

    pub fn line(&self) -> String {
        let (tag, detail) = match &self.outcome {
            Ok(d) => ("PASS", d),
            Err(d) => ("FAIL", d),
        };
        format!(
            "[{tag}] criterion {:>2} {} ({:.1}s): {detail}",
            self.id,
            self.name,
            self.elapsed.as_secs_f64()
        )
    }
}

/// Runs one criterion and enforces its wall-clock limit.
pub fn run_criterion(c: &Criterion, ctx: &Context) -> Report {
    let start = Instant::now();
    let mut outcome = (c.run)(ctx);
    let elapsed = start.elapsed();
    if let (Ok(detail), Some(limit)) = (&outcome, c.time_limit) {
        if elapsed > limit {
            outcome = Err(format!(
                "{detail}; took {:.1}s, limit {}s",
                elapsed.as_secs_f64(),
                limit.as_secs()
            ));
        }
    }
    Report {
        id: c.id,
        name: c.name,
        elapsed,
        outcome,
    }
}

pub fn run_suites(suites: &[Suite], ctx: &Context, mut on_report: impl FnMut(&Report)) -> Vec<Report> {
    CRITERIA
        .iter()
        .filter(|c| suites.contains(&c.suite))
        .map(|c| {
            let r = run_criterion(c, ctx);
            on_report(&r);
            r
        })
        .collect()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn fail<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn zipf_marginals(_: &Context) -> Outcome {
    let c = gen_zipf_collection(&ZipfParams::new(20_000, 100_000, 1).map_err(fail)?);
    let n = c.len() as f64;
    let mean = c.docs().iter().map(Document::len).sum::<usize>() as f64 / n;
    let h = harmonic_number(100_000);
    let mut freq = [0usize; 11];
    for d in c.docs() {
        for r in d.ranks().take_while(|&r| r <= 10) {
            freq[r as usize] += 1;
        }
    }
    let f = |i: usize| freq[i] as f64 / n;
    ensure((mean - h).abs() / h <= 0.02, || format!("mean size {mean:.4} vs H_m {h:.4}"))?;
    ensure(freq[1] == c.len(), || format!("t_1 frequency {}", f(1)))?;
    ensure((f(2) - 0.5).abs() / 0.5 <= 0.10, || format!("t_2 frequency {}", f(2)))?;
    ensure((f(10) - 0.1).abs() / 0.1 <= 0.10, || format!("t_10 frequency {}", f(10)))?;
    Ok(format!(
        "mean size {mean:.4} (H_m {h:.4}), f(t1)={:.4} f(t2)={:.4} f(t10)={:.4}",
        f(1),
        f(2),
        f(10)
    ))
}

fn skip_sampler_equivalence(_: &Context) -> Outcome {
    let m = 50u32;
    let docs = 100_000u64;
    let mut skip = vec![0u64; m as usize + 1];
    let mut naive = vec![0u64; m as usize + 1];
    let seed = 2;
    for i in 0..docs {
        for r in gen_zipf_document(m, &mut RngState::derive(seed, i)).ranks() {
            skip[r as usize] += 1;
        }
        for r in gen_zipf_document_naive(m, &mut RngState::derive(seed + 1, i)).ranks() {
            naive[r as usize] += 1;
        }
    }
    let mut worst: f64 = 0.0;
    for j in 1..=m as usize {
        let p = 1.0 / j as f64;
        // standard deviation of the difference of two independent estimates
        let sigma = (2.0 * p * (1.0 - p) / docs as f64).sqrt();
        let diff = (skip[j] as f64 - naive[j] as f64).abs() / docs as f64;
        let z = if sigma > 0.0 { diff / sigma } else if diff == 0.0 { 0.0 } else { f64::INFINITY };
        ensure(z <= 3.0, || format!("term {j}: |diff| = {diff:.5} is {z:.2} sigma"))?;
        worst = worst.max(z);
    }
    Ok(format!("{m} terms over {docs} documents, largest deviation {worst:.2} sigma"))
}

fn index_oracle_equivalence(_: &Context) -> Outcome {
    let mut rng = RngState::from_seed(3);
    let instances = 1000;
    for i in 0..instances {
        let n = rng.random_range(1..=512usize);
        let spec = if i % 2 == 0 {
            ModelSpec::Zipf { n, m: rng.random_range(1..=4 * n as u32) }
        } else {
            ModelSpec::Hier { k: rng.random_range(2..=10), n }
        };
        let c = spec.collection(rng.random()).map_err(fail)?;
        let idx = PrefixIndex::build(&c);
        let query = if i % 10 == 9 {
            c.get(rng.random_range(0..n)).clone()
        } else {
            spec.document(&mut rng)
        };
        let (found, _) = idx.query(&query).map_err(fail)?;
        let exact = brute_force_max_lcp(&c, &query);
        ensure(found.lcp == exact, || {
            format!("instance {i} ({spec:?}): index lcp {} vs brute force {exact}", found.lcp)
        })?;
    }
    Ok(format!("{instances} instances, all exact"))
}

fn random_small_document(rng: &mut RngState) -> Document {
    let len = rng.random_range(0..=10);
    canonicalize((0..len).map(|_| rng.random_range(1..=30i64))).expect("positive ranks")
}

fn match_notion_chain(_: &Context) -> Outcome {
    let mut rng = RngState::from_seed(4);
    let pairs = 10_000;
    for i in 0..pairs {
        let (d, q) = match i % 3 {
            0 => (gen_zipf_document(1000, &mut rng), gen_zipf_document(1000, &mut rng)),
            1 => {
                let spec = ModelSpec::Hier { k: 6, n: 64 };
                (spec.document(&mut rng), spec.document(&mut rng))
            }
            _ => (random_small_document(&mut rng), random_small_document(&mut rng)),
        };
        let (lcp, prefix, common) = (
            lcp_length(&q, &d),
            containment_prefix_len(&q, &d),
            intersection_size(&q, &d),
        );
        ensure(lcp <= prefix && prefix <= common, || {
            format!("pair {i}: lcp {lcp}, containment {prefix}, intersection {common}")
        })?;
    }
    Ok(format!("{pairs} pairs, zero violations"))
}

fn query_complexity(_: &Context) -> Outcome {
    let mut details = Vec::new();
    for (i, exp) in [10u32, 14, 17].into_iter().enumerate() {
        let n = 1usize << exp;
        let spec = ModelSpec::Zipf { n, m: n as u32 };
        let c = spec.collection(50 + i as u64).map_err(fail)?;
        let idx = PrefixIndex::build(&c);
        let bound = exp as usize + 2;
        let mut worst = 0;
        for t in 0..100 {
            let q = spec.document(&mut RngState::derive(60 + i as u64, t));
            let (_, stats) = idx.query(&q).map_err(fail)?;
            ensure(stats.sequence_comparisons <= bound, || {
                format!("n=2^{exp}: {} sequence comparisons > {bound}", stats.sequence_comparisons)
            })?;
            ensure(stats.term_comparisons <= stats.sequence_comparisons * (q.len() + 1), || {
                format!("n=2^{exp}: {} term comparisons", stats.term_comparisons)
            })?;
            worst = worst.max(stats.sequence_comparisons);
        }
        details.push(format!("n=2^{exp}: max {worst} <= {bound}"));
    }
    Ok(details.join(", "))
}

fn zipf_thresholds(_: &Context) -> Outcome {
    let n = 50_000;
    let q_n = zipf_matching_level(n as f64);
    let top = (3.0 * q_n).ceil() as usize;
    let cd = estimate_curves(ModelSpec::Zipf { n, m: n as u32 }, 1..=top, 300, CollectionMode::Shared, 42)
        .map_err(fail)?;
    let r = cd.crossover_report();
    let p1 = cd.p_any_at(1).unwrap_or(f64::NAN);
    let p_top = cd.p_any_at(top).unwrap_or(f64::NAN);
    ensure(p1 == 1.0, || format!("p_any(1) = {p1}"))?;
    let in_range = |q: Option<usize>| q.is_some_and(|q| q >= 1 && q as f64 <= 3.0 * q_n);
    ensure(in_range(r.q_any_star) && in_range(r.q_prefix_star), || {
        format!("crossovers {:?} / {:?} outside [1, {:.3}]", r.q_any_star, r.q_prefix_star, 3.0 * q_n)
    })?;
    let gap = r.gap.unwrap_or(i64::MAX);
    ensure(gap.abs() <= 4, || format!("crossover gap {gap}"))?;
    ensure(p_top <= 0.05, || format!("p_any({top}) = {p_top}"))?;
    Ok(format!(
        "q_n={q_n:.3}, q_any*={}, q_prefix*={}, p_any({top})={p_top:.4}",
        r.q_any_star.unwrap(),
        r.q_prefix_star.unwrap()
    ))
}

fn hier_structure(_: &Context) -> Outcome {
    let k = 12;
    let c = gen_hier_collection(&HierParams::new(k, 7).map_err(fail)?);
    ensure(c.len() == 4096, || format!("{} documents", c.len()))?;
    for (i, d) in c.docs().iter().enumerate() {
        cell_path(d, k).map_err(|e| format!("document {i}: {e}"))?;
    }
    Ok(format!("{} documents, every one a valid cell path", c.len()))
}

fn hier_thresholds(_: &Context) -> Outcome {
    let k = 16;
    let gamma = 2.0;
    let (q, q_prime) = hier_matching_levels(k);
    let prefix_len = (q - gamma).floor() as usize;
    let any_len = (q_prime + 3.0).ceil() as usize;
    let cd = estimate_curves(ModelSpec::Hier { k, n: 1 << k }, 0..=k as usize, 300, CollectionMode::Shared, 42)
        .map_err(fail)?;
    let p_prefix = cd.p_prefix_at(prefix_len).unwrap_or(f64::NAN);
    let p_any = cd.p_any_at(any_len).unwrap_or(f64::NAN);
    let prefix_bound = 1.0 - 2f64.powf(-(2.0 * k as f64).powf(gamma));
    let any_bound = 2.0 / (k as f64).powf(3.0 - 1.0);
    ensure(p_prefix >= 0.99, || format!("P(prefix >= {prefix_len}) = {p_prefix}"))?;
    ensure(p_any <= 0.05, || format!("P(any >= {any_len}) = {p_any}"))?;
    Ok(format!(
        "P(prefix >= {prefix_len}) = {p_prefix:.4} (bound {prefix_bound:.6}), P(any >= {any_len}) = {p_any:.4} (bound {any_bound:.4})"
    ))
}

fn hier_zipf_law(_: &Context) -> Outcome {
    let k = 16;
    for level in 1..=k {
        let p = hier_zipf_law_product(level, k).map_err(fail)?;
        ensure((0.5..1.5).contains(&p), || format!("analytic level {level}: {p}"))?;
    }
    let rows = zipf_law_check(k, 1 << k, 9).map_err(fail)?;
    let mut worst: f64 = 0.0;
    for r in rows.iter().take(8) {
        ensure(r.deviation <= 0.2, || {
            format!("level {}: empirical {:.4} vs analytic {:.4}", r.level, r.empirical, r.analytic)
        })?;
        worst = worst.max(r.deviation);
    }
    Ok(format!("analytic products in [0.5, 1.5); levels 1-8 max deviation {worst:.4}"))
}

fn genericity_dominance(_: &Context) -> Outcome {
    let rows = genericity_rate(0.5, &[1_000, 10_000, 100_000], 100_000, 2000, 10).map_err(fail)?;
    let mut parts = Vec::new();
    for r in &rows {
        ensure([r.plain_rate, r.extended_rate, r.density_rate].iter().all(|p| (0.0..=1.0).contains(p)), || {
            format!("n={}: rate outside [0, 1]", r.n)
        })?;
        ensure(r.extended_rate >= r.plain_rate, || {
            format!("n={}: extended {} < plain {}", r.n, r.extended_rate, r.plain_rate)
        })?;
        parts.push(format!(
            "n={} plain={:.4} extended={:.4} density={:.4} bound={:.3}",
            r.n, r.plain_rate, r.extended_rate, r.density_rate, r.bound
        ));
    }
    Ok(parts.join("; "))
}

fn run_bin(bin: &Path, args: &[&str], threads: Option<&str>) -> Result<(), String> {
    let mut cmd = Command::new(bin);
    cmd.args(args);
    match threads {
        Some(t) => cmd.env("MAXINT_THREADS", t),
        None => cmd.env_remove("MAXINT_THREADS"),
    };
    let out = cmd.output().map_err(|e| format!("running {}: {e}", bin.display()))?;
    ensure(out.status.success(), || {
        format!("`maxint {}` failed: {}", args.join(" "), String::from_utf8_lossy(&out.stderr).trim())
    })
}

fn cli_determinism(ctx: &Context) -> Outcome {
    let dir = tempfile::tempdir().map_err(fail)?;
    let path = |name: &str| dir.path().join(name).to_string_lossy().into_owned();
    let (a, b) = (path("a.txt"), path("b.txt"));
    for out in [&a, &b] {
        run_bin(&ctx.bin, &["gen", "--model", "zipf", "--n", "2000", "--m", "5000", "--seed", "17", "--out", out], None)?;
    }
    let (ha, hb) = (path("ha.txt"), path("hb.txt"));
    for out in [&ha, &hb] {
        run_bin(&ctx.bin, &["gen", "--model", "hier", "--k", "10", "--seed", "17", "--out", out], None)?;
    }
    let read = |p: &str| std::fs::read(p).map_err(fail);
    ensure(read(&a)? == read(&b)?, || "zipf gen output differs between runs".into())?;
    ensure(read(&ha)? == read(&hb)?, || "hier gen output differs between runs".into())?;

    let (serial, parallel) = (path("serial.csv"), path("parallel.csv"));
    let curve = |csv: &str| {
        vec![
            "curve".to_string(), "--model".into(), "zipf".into(), "--n".into(), "3000".into(),
            "--trials".into(), "200".into(), "--q-min".into(), "1".into(), "--q-max".into(), "12".into(),
            "--seed".into(), "5".into(), "--csv".into(), csv.to_string(),
        ]
    };
    for (csv, threads) in [(&serial, "1"), (&parallel, "8")] {
        let args = curve(csv);
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        run_bin(&ctx.bin, &args, Some(threads))?;
    }
    ensure(read(&serial)? == read(&parallel)?, || "curve CSV differs between 1 and 8 threads".into())?;
    Ok("gen reruns and 1-vs-8-thread curve CSVs are byte-identical".into())
}

fn metric_properties(_: &Context) -> Outcome {
    let mut rng = RngState::from_seed(12);
    let triples = 10_000;
    let mut violations = 0;
    let mut order_mismatches = 0;
    for i in 0..triples {
        let [a, b, c]: [Document; 3] = std::array::from_fn(|_| match i % 2 {
            0 => random_small_document(&mut rng),
            _ => gen_zipf_document(200, &mut rng),
        });
        let m = a.len().max(b.len()).max(c.len()).max(1) + rng.random_range(0..3);
        let d = |x: &Document, y: &Document| reverse_order_metric(x, y, m);
        let (ab, bc, ac) = (d(&a, &b).map_err(fail)?, d(&b, &c).map_err(fail)?, d(&a, &c).map_err(fail)?);
        if ac > ab + bc + 1e-12 {
            violations += 1;
        }
        let by_overlap = intersection_size(&a, &b).cmp(&intersection_size(&a, &c));
        let by_distance = ac.partial_cmp(&ab).expect("finite distances");
        if by_overlap != by_distance {
            order_mismatches += 1;
        }
    }
    ensure(violations == 0, || format!("{violations} triangle violations"))?;
    ensure(order_mismatches == 0, || format!("{order_mismatches} order mismatches"))?;
    Ok(format!("{triples} triples: 0 triangle violations, 0 order mismatches"))
}

fn round_trips(_: &Context) -> Outcome {
    let mut rng = RngState::from_seed(13);
    for i in 0..100 {
        let c = match i % 3 {
            0 => gen_zipf_collection(&ZipfParams::new(rng.random_range(1..=200), rng.random_range(1..=5000), rng.random()).map_err(fail)?),
            1 => gen_hier_collection(&HierParams::new(rng.random_range(2..=9), rng.random()).map_err(fail)?),
            _ => Collection::external((0..rng.random_range(0..=50)).map(|_| random_small_document(&mut rng)).collect()),
        };
        let bytes = encode_collection(&c);
        let back = decode_collection(&bytes).map_err(|e| format!("collection {i}: {e}"))?;
        ensure(back == c && encode_collection(&back) == bytes, || format!("collection {i} does not round-trip"))?;
    }
    let seed = sub_seed(13, 1);
    let cd = estimate_curves(ModelSpec::Hier { k: 8, n: 256 }, 0..=8, 100, CollectionMode::Shared, seed).map_err(fail)?;
    let again = estimate_curves(ModelSpec::Hier { k: 8, n: 256 }, 0..=8, 100, CollectionMode::Shared, seed).map_err(fail)?;
    ensure(write_curve_csv(&cd) == write_curve_csv(&again), || "CSV bytes differ".into())?;
    ensure(render_curve_svg(&cd).map_err(fail)? == render_curve_svg(&again).map_err(fail)?, || "SVG bytes differ".into())?;
    Ok("100 collections round-trip byte-identically; CSV and SVG are deterministic".into())
}
