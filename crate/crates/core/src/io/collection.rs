use std::fmt::Write;

use super::{header_number, lines, parse_decimal};
use crate::document::{Collection, Document, ModelTag, TermRank};
use crate::error::{Error, Result};
use crate::models::{hier_universe, MAX_HIER_LEVELS};

const MAGIC: &str = "maxint-collection";
const VERSION: &str = "v1";

/// Header line, then one line of ascending ranks per document.
pub fn encode_collection(c: &Collection) -> Vec<u8> {
    let (k, seed) = match c.model() {
        ModelTag::Zipf { seed, .. } => (0, seed),
        ModelTag::Hier { k, seed, .. } => (k, seed),
        ModelTag::External { .. } => (0, 0),
    };
    let mut out = String::with_capacity(32 + c.len() * 48);
    writeln!(
        out,
        "{MAGIC} {VERSION} model={} n={} m={} k={k} seed={seed}",
        c.model().name(),
        c.len(),
        c.model().universe(),
    )
    .unwrap();
    for d in c.docs() {
        writeln!(out, "{d}").unwrap();
    }
    out.into_bytes()
}

pub fn decode_collection(bytes: &[u8]) -> Result<Collection> {
    let lines = lines(bytes)?;
    let mut tokens = lines[0].split(' ');
    if tokens.next() != Some(MAGIC) || tokens.next() != Some(VERSION) {
        return Err(Error::Format(format!("expected `{MAGIC} {VERSION}` header")));
    }
    let model = super::field(tokens.next(), "model")?;
    let n: usize = header_number(tokens.next(), "n")?;
    let m: u32 = header_number(tokens.next(), "m")?;
    let k: u32 = header_number(tokens.next(), "k")?;
    let seed: u64 = header_number(tokens.next(), "seed")?;
    if tokens.next().is_some() {
        return Err(Error::Format("trailing header fields".into()));
    }

    let tag = match model {
        "zipf" if k == 0 && m >= 1 && n >= 1 => ModelTag::Zipf { n, m, seed },
        "hier" if (2..=MAX_HIER_LEVELS).contains(&k) && m == hier_universe(k) && n >= 1 => {
            ModelTag::Hier { k, n, seed }
        }
        "external" if k == 0 && seed == 0 => ModelTag::External { universe: m },
        _ => {
            return Err(Error::Format(format!(
                "inconsistent header: model={model} n={n} m={m} k={k} seed={seed}"
            )))
        }
    };

    let body = &lines[1..];
    if body.len() != n {
        return Err(Error::Format(format!(
            "header announces {n} documents, found {}",
            body.len()
        )));
    }
    let universe = tag.universe();
    let docs = body
        .iter()
        .enumerate()
        .map(|(i, line)| decode_document(line, i + 2, universe))
        .collect::<Result<Vec<_>>>()?;
    Ok(Collection::new(docs, tag))
}

fn decode_document(line: &str, line_no: usize, universe: u32) -> Result<Document> {
    let invalid = |reason: String| Error::InvalidDocument {
        line: line_no,
        reason,
    };
    if line.is_empty() {
        return Ok(Document::empty());
    }
    let mut terms: Vec<TermRank> = Vec::new();
    for token in line.split(' ') {
        let rank: u32 =
            parse_decimal(token).ok_or_else(|| invalid(format!("bad rank `{token}`")))?;
        if rank == 0 || rank > universe {
            return Err(invalid(format!("rank {rank} outside 1..={universe}")));
        }
        let rank = TermRank::from_u32(rank);
        if terms.last().is_some_and(|&prev| prev >= rank) {
            return Err(invalid("ranks must be strictly increasing".into()));
        }
        terms.push(rank);
    }
    Ok(Document::from_sorted(terms))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::{gen_hier_collection, gen_zipf_collection, HierParams, ZipfParams};

    #[test]
    fn single_document_body() {
        let c = Collection::external(vec![Document::from_sorted_ranks(&[1, 2]).unwrap()]);
        let bytes = encode_collection(&c);
        assert_eq!(
            std::str::from_utf8(&bytes).unwrap(),
            "maxint-collection v1 model=external n=1 m=2 k=0 seed=0\n1 2\n"
        );
    }

    #[test]
    fn generated_collections_round_trip() {
        let z = gen_zipf_collection(&ZipfParams::new(50, 200, 3).unwrap());
        let h = gen_hier_collection(&HierParams::new(5, 3).unwrap());
        for c in [z, h] {
            let bytes = encode_collection(&c);
            let back = decode_collection(&bytes).unwrap();
            assert_eq!(back, c);
            assert_eq!(encode_collection(&back), bytes);
        }
    }

    #[test]
    fn empty_documents_and_collections() {
        let c = Collection::external(vec![Document::empty(), Document::from_sorted_ranks(&[3]).unwrap()]);
        let bytes = encode_collection(&c);
        assert!(bytes.ends_with(b"\n\n3\n"));
        assert_eq!(decode_collection(&bytes).unwrap(), c);

        let empty = Collection::external(vec![]);
        assert_eq!(decode_collection(&encode_collection(&empty)).unwrap(), empty);
    }

    #[test]
    fn rejects_unsorted_lines() {
        let text = "maxint-collection v1 model=external n=1 m=5 k=0 seed=0\n2 1\n";
        assert!(matches!(
            decode_collection(text.as_bytes()),
            Err(Error::InvalidDocument { line: 2, .. })
        ));
        let dup = "maxint-collection v1 model=external n=1 m=5 k=0 seed=0\n1 1\n";
        assert!(matches!(decode_collection(dup.as_bytes()), Err(Error::InvalidDocument { .. })));
    }

    #[test]
    fn rejects_malformed_input() {
        let cases = [
            "maxint-collection v2 model=zipf n=1 m=5 k=0 seed=0\n1\n",
            "maxint-collection v1 model=zipf n=1 m=5 k=0\n1\n",
            "maxint-collection v1 model=zipf n=2 m=5 k=0 seed=0\n1\n",
            "maxint-collection v1 model=zipf n=1 m=5 k=0 seed=0\n1",
            "maxint-collection v1 model=hier n=1 m=5 k=3 seed=0\n1\n",
            "maxint-collection v1 model=nope n=1 m=5 k=0 seed=0\n1\n",
            "maxint-collection v1 model=zipf n=1 m=05 k=0 seed=0\n1\n",
            "maxint-collection v1 model=zipf n=1 m=5 k=0 seed=0 x=1\n1\n",
        ];
        for text in cases {
            assert!(
                matches!(decode_collection(text.as_bytes()), Err(Error::Format(_))),
                "{text:?}"
            );
        }
        let bad_docs = [
            "maxint-collection v1 model=zipf n=1 m=5 k=0 seed=0\n1 9\n",
            "maxint-collection v1 model=zipf n=1 m=5 k=0 seed=0\n0 1\n",
            "maxint-collection v1 model=zipf n=1 m=5 k=0 seed=0\n1  2\n",
            "maxint-collection v1 model=zipf n=1 m=5 k=0 seed=0\n1 2 \n",
            "maxint-collection v1 model=zipf n=1 m=5 k=0 seed=0\n1 2\r\n",
        ];
        for text in bad_docs {
            assert!(
                matches!(decode_collection(text.as_bytes()), Err(Error::InvalidDocument { .. })),
                "{text:?}"
            );
        }
    }
}
