//! Shared generators and brute-force oracles for the integration tests.
//! The oracles use plain `i64` loops and a local rational solver so that
//! they do not share code paths with the library.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;
use torweyl::TorusAction;

/// `(rows, r, s)` with `1 <= m <= max_m`, `1 <= n <= max_n`.
pub fn raw_action(max_m: usize, max_n: usize, bound: i64) -> impl Strategy<Value = (Vec<Vec<i64>>, usize, usize)> {
    (1..=max_m, 1..=max_n)
        .prop_flat_map(move |(m, n)| {
            (proptest::collection::vec(proptest::collection::vec(-bound..=bound, n), m), 0..=n)
        })
        .prop_map(|(rows, r)| {
            let n = rows[0].len();
            (rows, r, n - r)
        })
}

pub fn action(max_m: usize, max_n: usize, bound: i64) -> impl Strategy<Value = TorusAction> {
    raw_action(max_m, max_n, bound).prop_map(|(rows, r, s)| TorusAction::from_rows(&rows, r, s).unwrap())
}

pub fn rows_i64(a: &TorusAction) -> Vec<Vec<i64>> {
    a.matrix()
        .to_rows()
        .iter()
        .map(|row| row.iter().map(|x| i64::try_from(x).unwrap()).collect())
        .collect()
}

pub fn mat_vec(rows: &[Vec<i64>], v: &[i64]) -> Vec<i64> {
    rows.iter().map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
}

/// Calls `f` on every point of the box `lo <= v <= hi`.
pub fn for_box(lo: &[i64], hi: &[i64], mut f: impl FnMut(&[i64])) {
    if lo.iter().zip(hi).any(|(a, b)| a > b) {
        return;
    }
    let mut v = lo.to_vec();
    loop {
        f(&v);
        let mut i = v.len();
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if v[i] < hi[i] {
                v[i] += 1;
                break;
            }
            v[i] = lo[i];
        }
    }
}

fn q(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

/// Solves `A x = b` over `Q` when `A` has full column rank; `None` if the
/// system is inconsistent.
pub fn solve_full_column_rank(a: &[Vec<i64>], b: &[i64]) -> Option<Vec<BigRational>> {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut m: Vec<Vec<BigRational>> = a
        .iter()
        .zip(b)
        .map(|(row, &rhs)| row.iter().map(|&x| q(x)).chain(std::iter::once(q(rhs))).collect())
        .collect();
    let mut pivot_row = 0;
    for c in 0..cols {
        let p = (pivot_row..rows).find(|&i| !m[i][c].is_zero())?;
        m.swap(pivot_row, p);
        let inv = BigRational::one() / m[pivot_row][c].clone();
        for x in m[pivot_row].iter_mut() {
            *x *= &inv;
        }
        let pivot = m[pivot_row].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != pivot_row && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, p) in row.iter_mut().zip(&pivot) {
                    *x -= p * &f;
                }
            }
        }
        pivot_row += 1;
    }
    if m[pivot_row..].iter().any(|row| !row[cols].is_zero()) {
        return None;
    }
    Some((0..cols).map(|c| m[c][cols].clone()).collect())
}

/// Columns `from..to` of `rows`.
pub fn columns(rows: &[Vec<i64>], from: usize, to: usize) -> Vec<Vec<i64>> {
    rows.iter().map(|row| row[from..to].to_vec()).collect()
}

/// The columns `r..n` are linearly independent over `Q`.
pub fn torus_independent(rows: &[Vec<i64>], r: usize) -> bool {
    let n = rows[0].len();
    let s = n - r;
    let mut m: Vec<Vec<BigRational>> = columns(rows, r, n).iter().map(|row| row.iter().map(|&x| q(x)).collect()).collect();
    let mut rank = 0;
    for c in 0..s {
        if let Some(p) = (rank..m.len()).find(|&i| !m[i][c].is_zero()) {
            m.swap(rank, p);
            let pivot = m[rank].clone();
            for row in m.iter_mut().skip(rank + 1) {
                let f = &row[c] / &pivot[c];
                for (x, p) in row.iter_mut().zip(&pivot).skip(c) {
                    *x -= p * &f;
                }
            }
            rank += 1;
        }
    }
    rank == s
}

/// Number of `alpha in N^r x Z^s` with `L alpha = chi` and
/// `alpha_i <= cap[i]` on the affine coordinates; the torus part is solved
/// exactly. Requires independent torus columns.
pub fn brute_dim(rows: &[Vec<i64>], r: usize, chi: &[i64], cap: &[i64]) -> u64 {
    let n = rows[0].len();
    let torus = columns(rows, r, n);
    let head = columns(rows, 0, r);
    let mut count = 0;
    for_box(&vec![0; r], cap, |alpha| {
        let lv = mat_vec(&head, alpha);
        let rhs: Vec<i64> = chi.iter().zip(&lv).map(|(c, x)| c - x).collect();
        if let Some(x) = solve_full_column_rank(&torus, &rhs) {
            if x.iter().all(|v| v.is_integer()) {
                count += 1;
            }
        }
    });
    count
}
