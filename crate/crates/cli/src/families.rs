//! Generators for the example families with enough simple
//! finite-dimensional modules.

use anyhow::{bail, ensure, Result};
use serde::Serialize;
use torweyl::TorusAction;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    /// `G = k^x` acting on `k^n` with weights `b_1, ..., b_n`.
    Odd,
    /// `G = (k^x)^2` acting on `k^n` with alternating weights.
    Even,
    /// `G = (k^x)^2` acting on `k^2 x k^x`.
    Gk4,
}

#[derive(Debug, Clone, Serialize)]
pub struct Example {
    pub name: String,
    pub action: TorusAction,
    /// GK dimension predicted for the family.
    pub expected_gk: i64,
}

/// One-weight family `[b_1 ... b_n]`, all `b_i = 1` unless weights are
/// given; GK dimension `2n - 1`.
pub fn odd(n: Option<usize>, weights: Option<Vec<i64>>) -> Result<Vec<Example>> {
    let weights = match (n, weights) {
        (Some(n), Some(w)) => {
            ensure!(w.len() == n, "--n {n} disagrees with {} weights", w.len());
            w
        }
        (None, Some(w)) => w,
        (n, None) => vec![1; n.unwrap_or(2)],
    };
    let n = weights.len();
    ensure!(n >= 2, "the odd family needs n >= 2");
    ensure!(weights.iter().all(|&b| b != 0), "the odd family needs nonzero weights");
    let action = TorusAction::from_rows(&[weights], n, 0)?;
    Ok(vec![Example { name: format!("odd-{n}"), action, expected_gk: 2 * n as i64 - 1 }])
}

/// The two interleaved `2 x n` patterns: column `i` is `e_{i mod 2}`, and
/// the same with the last two columns exchanged. GK dimension `2n - 2`.
pub fn even(n: Option<usize>) -> Result<Vec<Example>> {
    let n = n.unwrap_or(4);
    ensure!(n >= 4, "the even family needs n >= 4");
    let mut a = vec![vec![0i64; n]; 2];
    for j in 0..n {
        a[j % 2][j] = 1;
    }
    let mut b = a.clone();
    for row in &mut b {
        row.swap(n - 2, n - 1);
    }
    let gk = 2 * n as i64 - 2;
    Ok(vec![
        Example { name: format!("even-{n}-a"), action: TorusAction::from_rows(&a, n, 0)?, expected_gk: gk },
        Example { name: format!("even-{n}-b"), action: TorusAction::from_rows(&b, n, 0)?, expected_gk: gk },
    ])
}

pub fn gk4(n: Option<usize>) -> Result<Vec<Example>> {
    if let Some(n) = n {
        if n != 3 {
            bail!("the gk4 family has n = 3");
        }
    }
    let action = TorusAction::from_rows(&[vec![1, 1, 0], vec![0, 0, 1]], 2, 1)?;
    Ok(vec![Example { name: "gk4".into(), action, expected_gk: 4 }])
}

pub fn generate(family: Family, n: Option<usize>, weights: Option<Vec<i64>>) -> Result<Vec<Example>> {
    if weights.is_some() && family != Family::Odd {
        bail!("--weights only applies to the odd family");
    }
    match family {
        Family::Odd => odd(n, weights),
        Family::Even => even(n),
        Family::Gk4 => gk4(n),
    }
}
