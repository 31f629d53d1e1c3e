//! Deterministic text formats: collections, index orders, probability
//! curves as CSV and as SVG charts.

mod collection;
mod curve;
mod index_file;

pub use collection::{decode_collection, encode_collection};
pub use curve::{render_curve_svg, write_curve_csv, CSV_HEADER};
pub use index_file::{decode_index_order, encode_index_order};

use crate::error::{Error, Result};

/// Parses `key=value` and checks the key.
fn field<'a>(token: Option<&'a str>, key: &str) -> Result<&'a str> {
    token
        .and_then(|t| t.strip_prefix(key))
        .and_then(|t| t.strip_prefix('='))
        .ok_or_else(|| Error::Format(format!("expected `{key}=...` in header")))
}

/// Canonical unsigned decimal: digits only, no leading zeros.
fn parse_decimal<T: std::str::FromStr>(s: &str) -> Option<T> {
    let canonical = !s.is_empty()
        && s.bytes().all(|b| b.is_ascii_digit())
        && (s == "0" || !s.starts_with('0'));
    if canonical {
        s.parse().ok()
    } else {
        None
    }
}

fn header_number<T: std::str::FromStr>(token: Option<&str>, key: &str) -> Result<T> {
    let raw = field(token, key)?;
    parse_decimal(raw).ok_or_else(|| Error::Format(format!("bad value `{raw}` for {key}")))
}

/// Splits LF-terminated text into lines, rejecting a missing final LF.
fn lines(bytes: &[u8]) -> Result<Vec<&str>> {
    let text = std::str::from_utf8(bytes).map_err(|e| Error::Format(e.to_string()))?;
    let body = text
        .strip_suffix('\n')
        .ok_or_else(|| Error::Format("file must end with a line feed".into()))?;
    Ok(body.split('\n').collect())
}
