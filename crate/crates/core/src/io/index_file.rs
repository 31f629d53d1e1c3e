use std::fmt::Write;

use super::{header_number, lines, parse_decimal};
use crate::error::{Error, Result};
use crate::index::PrefixIndex;

/// `maxint-index v1 n=<n>` and the sorted order, one index per line.
pub fn encode_index_order(idx: &PrefixIndex<'_>) -> Vec<u8> {
    let mut out = String::with_capacity(24 + idx.len() * 7);
    writeln!(out, "maxint-index v1 n={}", idx.len()).unwrap();
    for i in idx.order() {
        writeln!(out, "{i}").unwrap();
    }
    out.into_bytes()
}

/// Reads the order back; [`PrefixIndex::from_order`] checks it against a
/// collection.
pub fn decode_index_order(bytes: &[u8]) -> Result<Vec<u32>> {
    let lines = lines(bytes)?;
    let mut tokens = lines[0].split(' ');
    if tokens.next() != Some("maxint-index") || tokens.next() != Some("v1") {
        return Err(Error::Format("expected `maxint-index v1` header".into()));
    }
    let n: usize = header_number(tokens.next(), "n")?;
    if tokens.next().is_some() {
        return Err(Error::Format("trailing header fields".into()));
    }
    let body = &lines[1..];
    if body.len() != n {
        return Err(Error::Format(format!("header announces {n} entries, found {}", body.len())));
    }
    body.iter()
        .map(|l| parse_decimal(l).ok_or_else(|| Error::Format(format!("bad index entry `{l}`"))))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::document::{Collection, Document};

    #[test]
    fn format_and_round_trip() {
        let docs = [&[1u32, 3][..], &[1, 2], &[2]]
            .iter()
            .map(|r| Document::from_sorted_ranks(r).unwrap())
            .collect();
        let c = Collection::external(docs);
        let idx = PrefixIndex::build(&c);
        let bytes = encode_index_order(&idx);
        assert_eq!(bytes, b"maxint-index v1 n=3\n1\n0\n2\n");
        let order = decode_index_order(&bytes).unwrap();
        assert_eq!(order, vec![1, 0, 2]);
        assert!(PrefixIndex::from_order(&c, order).is_ok());
    }

    #[test]
    fn rejects_malformed() {
        assert!(decode_index_order(b"maxint-index v1 n=2\n0\n").is_err());
        assert!(decode_index_order(b"maxint-index v1 n=1\n-1\n").is_err());
        assert!(decode_index_order(b"maxint-index v1 n=1\n0").is_err());
        assert!(decode_index_order(b"maxint-idx v1 n=1\n0\n").is_err());
        assert_eq!(decode_index_order(b"maxint-index v1 n=0\n").unwrap(), Vec::<u32>::new());
    }
}
