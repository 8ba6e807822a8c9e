use std::io::Read;

use anyhow::{bail, Context, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use torweyl::serde_big::parse_rational;
use torweyl::{EnumLimit, TorusAction};

/// Reads an action document `{"r": .., "s": .., "L": [[..], ..]}` from a
/// path, or from standard input when the path is `-`. Returns the action and
/// the raw bytes.
pub fn read_action(path: &str) -> Result<(TorusAction, Vec<u8>)> {
    let mut bytes = Vec::new();
    if path == "-" {
        std::io::stdin().read_to_end(&mut bytes).context("reading standard input")?;
    } else {
        bytes = std::fs::read(path).with_context(|| format!("reading {path}"))?;
    }
    let action: TorusAction =
        serde_json::from_slice(&bytes).with_context(|| format!("invalid action document {path}"))?;
    Ok((action, bytes))
}

/// Comma-separated integers, e.g. `2,-1,0`.
pub fn parse_int_vector(text: &str) -> Result<Vec<BigInt>> {
    let text = text.trim();
    if text.is_empty() {
        return Ok(Vec::new());
    }
    text.split(',')
        .map(|t| t.trim().parse::<BigInt>().with_context(|| format!("invalid integer {t:?}")))
        .collect()
}

pub fn parse_i64_vector(text: &str) -> Result<Vec<i64>> {
    parse_int_vector(text)?
        .iter()
        .map(|x| i64::try_from(x).with_context(|| format!("{x} does not fit in 64 bits")))
        .collect()
}

/// One-based comma-separated indices, returned zero-based.
pub fn parse_index_set(text: &str, bound: usize) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for v in parse_i64_vector(text)? {
        if v < 1 || v as usize > bound {
            bail!("index {v} outside 1..={bound}");
        }
        out.push(v as usize - 1);
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

pub fn parse_bound(text: &str) -> Result<BigRational> {
    let q = parse_rational(text).map_err(anyhow::Error::msg)?;
    if q < BigRational::from_integer(0.into()) {
        bail!("the bound must be nonnegative");
    }
    Ok(q)
}

/// The enumeration cap from `TORWEYL_MAX_BOX`, defaulting to one million.
pub fn enum_limit() -> Result<EnumLimit> {
    match std::env::var("TORWEYL_MAX_BOX") {
        Ok(v) => {
            let n = v.trim().parse::<u64>().with_context(|| format!("invalid TORWEYL_MAX_BOX {v:?}"))?;
            Ok(EnumLimit(n))
        }
        Err(std::env::VarError::NotPresent) => Ok(EnumLimit::default()),
        Err(e) => bail!("invalid TORWEYL_MAX_BOX: {e}"),
    }
}
