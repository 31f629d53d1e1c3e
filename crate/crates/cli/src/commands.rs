use std::fs;
use std::io::Write;
use std::path::Path;

use anyhow::{anyhow, bail, Context};
use maxint_core::experiments::{estimate_curves, CollectionMode};
use maxint_core::io::{
    decode_collection, decode_index_order, encode_collection, encode_index_order,
    render_curve_svg, write_curve_csv,
};
use maxint_core::models::{gen_hier_collection, gen_zipf_collection, HierParams, ZipfParams};
use maxint_core::{canonicalize, Collection, Document, ModelSpec, ModelTag, Oracle, PrefixIndex, RngState};

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Model {
    Zipf,
    Hier,
}

/// Resolves model flags; `m` defaults to `n` and hierarchical `n` to `2^k`.
pub fn model_spec(model: Model, n: Option<usize>, m: Option<u32>, k: Option<u32>) -> Result<ModelSpec, CliError> {
    let spec = match model {
        Model::Zipf => {
            if k.is_some() {
                bail_usage("--k only applies to --model hier")?;
            }
            let n = n.ok_or_else(|| anyhow!("--model zipf needs --n"))?;
            let m = match m {
                Some(m) => m,
                None => u32::try_from(n).context("--n too large to default --m")?,
            };
            ModelSpec::Zipf { n, m }
        }
        Model::Hier => {
            if m.is_some() {
                bail_usage("--m only applies to --model zipf")?;
            }
            let k = k.ok_or_else(|| anyhow!("--model hier needs --k"))?;
            let p = HierParams::new(k, 0)?;
            let n = n.unwrap_or(p.n);
            ModelSpec::Hier { k, n }
        }
    };
    spec.validate()?;
    Ok(spec)
}

fn bail_usage(msg: &str) -> Result<(), CliError> {
    Err(CliError::Usage(anyhow!("{msg}")))
}

fn read(path: &Path) -> anyhow::Result<Vec<u8>> {
    fs::read(path).with_context(|| format!("reading {}", path.display()))
}

fn write(path: &Path, bytes: &[u8]) -> anyhow::Result<()> {
    fs::write(path, bytes).with_context(|| format!("writing {}", path.display()))
}

pub fn load_collection(path: &Path) -> anyhow::Result<Collection> {
    decode_collection(&read(path)?).with_context(|| format!("decoding {}", path.display()))
}

pub fn gen(spec: ModelSpec, seed: u64, out: &Path) -> Result<(), CliError> {
    let collection = match spec {
        ModelSpec::Zipf { n, m } => {
            let p = ZipfParams::new(n, m, seed)?;
            if p.outside_polynomial_regime() {
                eprintln!("warning: m = {m} exceeds n^3; the model is meant for m polynomial in n");
            }
            gen_zipf_collection(&p)
        }
        ModelSpec::Hier { k, n } => gen_hier_collection(&HierParams::new(k, seed)?.with_n(n)?),
    };
    write(out, &encode_collection(&collection))?;
    Ok(())
}

pub fn index(input: &Path, out: &Path) -> Result<(), CliError> {
    let collection = load_collection(input)?;
    let idx = PrefixIndex::build(&collection);
    write(out, &encode_index_order(&idx))?;
    Ok(())
}

pub enum QuerySource<'a> {
    File(&'a Path),
    Random { seed: u64 },
}

/// Parses whitespace-separated ranks into a canonical document.
pub fn parse_query(text: &str) -> anyhow::Result<Document> {
    let raw = text
        .split_whitespace()
        .map(|t| t.parse::<i64>().with_context(|| format!("bad term rank `{t}`")))
        .collect::<anyhow::Result<Vec<_>>>()?;
    Ok(canonicalize(raw)?)
}

fn random_query(collection: &Collection, seed: u64) -> anyhow::Result<Document> {
    let spec = match collection.model() {
        ModelTag::Zipf { n, m, .. } => ModelSpec::Zipf { n, m },
        ModelTag::Hier { k, n, .. } => ModelSpec::Hier { k, n },
        ModelTag::External { .. } => bail!("--random needs a zipf or hier collection"),
    };
    Ok(spec.document(&mut RngState::derive(seed, 0)))
}

pub fn query(
    collection_path: &Path,
    index_path: &Path,
    source: QuerySource<'_>,
    with_oracle: bool,
    out: &mut impl Write,
) -> Result<(), CliError> {
    let collection = load_collection(collection_path)?;
    let order = decode_index_order(&read(index_path)?)
        .with_context(|| format!("decoding {}", index_path.display()))?;
    let idx = PrefixIndex::from_order(&collection, order)
        .with_context(|| format!("{} does not index this collection", index_path.display()))?;
    let q = match source {
        QuerySource::File(path) => {
            let text = String::from_utf8(read(path)?).context("query file is not UTF-8")?;
            parse_query(&text)?
        }
        QuerySource::Random { seed } => random_query(&collection, seed)?,
    };

    let (found, stats) = idx.query(&q)?;
    writeln!(out, "query={q}")?;
    writeln!(
        out,
        "doc_index={} lcp={} containment_prefix={} intersection={}",
        found.doc_index, found.lcp, found.containment_prefix, found.intersection
    )?;
    writeln!(
        out,
        "sequence_comparisons={} term_comparisons={}",
        stats.sequence_comparisons, stats.term_comparisons
    )?;
    if with_oracle {
        let best = Oracle::new(&collection).max_intersection(&q)?;
        writeln!(
            out,
            "oracle doc_index={} lcp={} containment_prefix={} intersection={}",
            best.doc_index, best.lcp, best.containment_prefix, best.intersection
        )?;
    }
    Ok(())
}

pub struct CurveArgs<'a> {
    pub spec: ModelSpec,
    pub trials: usize,
    pub q_min: usize,
    pub q_max: usize,
    pub fresh: bool,
    pub seed: u64,
    pub csv: &'a Path,
    pub svg: Option<&'a Path>,
}

pub fn curve(args: &CurveArgs<'_>, out: &mut impl Write) -> Result<(), CliError> {
    if args.q_min > args.q_max {
        bail_usage("--q-min must not exceed --q-max")?;
    }
    let mode = if args.fresh {
        CollectionMode::FreshPerTrial
    } else {
        CollectionMode::Shared
    };
    let cd = estimate_curves(args.spec, args.q_min..=args.q_max, args.trials, mode, args.seed)?;
    write(args.csv, &write_curve_csv(&cd))?;
    if let Some(svg) = args.svg {
        write(svg, &render_curve_svg(&cd)?)?;
    }
    let r = cd.crossover_report();
    let show = |v: Option<usize>| v.map_or("none".to_string(), |q| q.to_string());
    writeln!(
        out,
        "mode={} trials={} q_any_star={} q_prefix_star={} gap={} theory_q={:.6}",
        mode.name(),
        cd.trials,
        show(r.q_any_star),
        show(r.q_prefix_star),
        r.gap.map_or("none".to_string(), |g| g.to_string()),
        r.theory_q
    )?;
    Ok(())
}
