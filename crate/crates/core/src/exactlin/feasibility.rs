//! Sign-constrained vectors in the rational row space of an integer matrix.
//!
//! The question "is there `y` with `beta = y^T L`, `beta_i >= 1` on a set `P`
//! and `beta_i = 0` on a set `Z`" is answered by Fourier-Motzkin elimination
//! over exact rationals. Every derived inequality remembers the nonnegative
//! combination of the original ones it came from, so an infeasible system
//! yields a Farkas certificate, which is turned into an explicit integer
//! vector `alpha` with `L alpha = 0`, `alpha_P >= 0` and `alpha_P != 0`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::rational::{primitive_integer_multiple, to_rational, RatMatrix, RatVector};
use super::IntMatrix;

/// A vector `beta = y^T L` meeting the sign constraints.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PositivityWitness {
    #[serde(with = "crate::serde_big")]
    pub beta: Vec<BigInt>,
    #[serde(with = "crate::serde_big")]
    pub y: Vec<BigRational>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Feasibility {
    Feasible(PositivityWitness),
    /// `alpha` satisfies `L alpha = 0`, `alpha_i >= 0` for `i` in the
    /// positive set with at least one of those strictly positive.
    Infeasible { alpha: Vec<BigInt> },
}

/// One inequality `coeffs . z >= rhs`, with `multipliers` recording it as a
/// nonnegative combination of the original inequalities.
#[derive(Debug, Clone)]
struct Row {
    coeffs: RatVector,
    rhs: BigRational,
    multipliers: RatVector,
}

/// Decides the system and returns either a witness or a certificate.
///
/// `positive` and `zero` must be disjoint; coordinates in neither set are
/// unconstrained.
pub fn rowspace_feasibility(l: &IntMatrix, positive: &[usize], zero: &[usize]) -> Feasibility {
    let m = l.rows();
    let lq = RatMatrix::from_int(l);

    // y ranges over the left kernel of the zero columns: y = W^T z.
    let mut zero_cols = RatMatrix::zeros(zero.len(), m);
    for (a, &j) in zero.iter().enumerate() {
        for i in 0..m {
            zero_cols[(a, i)] = lq[(i, j)].clone();
        }
    }
    let w: Vec<RatVector> = if zero.is_empty() {
        (0..m)
            .map(|i| {
                let mut e = vec![BigRational::zero(); m];
                e[i] = BigRational::one();
                e
            })
            .collect()
    } else {
        zero_cols.nullspace()
    };
    let k = w.len();

    // Constraint for coordinate p: sum_t z_t (w_t . L[:, p]) >= 1.
    let rows: Vec<Row> = positive
        .iter()
        .enumerate()
        .map(|(idx, &p)| {
            let coeffs = w
                .iter()
                .map(|wt| (0..m).map(|i| &wt[i] * &lq[(i, p)]).sum())
                .collect();
            let mut multipliers = vec![BigRational::zero(); positive.len()];
            multipliers[idx] = BigRational::one();
            Row { coeffs, rhs: BigRational::one(), multipliers }
        })
        .collect();

    match fourier_motzkin(rows, k) {
        Ok(z) => {
            let mut y = vec![BigRational::zero(); m];
            for (zt, wt) in z.iter().zip(&w) {
                for i in 0..m {
                    y[i] += zt * &wt[i];
                }
            }
            let beta_q: RatVector =
                (0..l.cols()).map(|j| (0..m).map(|i| &y[i] * &lq[(i, j)]).sum()).collect();
            let (beta, scale) = primitive_integer_multiple(&beta_q);
            let y = y.into_iter().map(|v| v * &scale).collect();
            Feasibility::Feasible(PositivityWitness { beta, y })
        }
        Err(lambda) => Feasibility::Infeasible { alpha: certificate_vector(l, positive, zero, &lambda) },
    }
}

/// Convenience form returning only the witness.
pub fn positive_vector_in_rowspace(
    l: &IntMatrix,
    positive: &[usize],
    zero: &[usize],
) -> Option<PositivityWitness> {
    match rowspace_feasibility(l, positive, zero) {
        Feasibility::Feasible(w) => Some(w),
        Feasibility::Infeasible { .. } => None,
    }
}

/// Eliminates variables from last to first. On success returns a solution;
/// on failure returns the multipliers of a contradiction `0 >= c > 0`.
fn fourier_motzkin(rows: Vec<Row>, vars: usize) -> Result<RatVector, RatVector> {
    let mut stages: Vec<Vec<Row>> = Vec::with_capacity(vars + 1);
    let mut current = rows;
    for v in (0..vars).rev() {
        let (mut pos, mut neg, mut rest) = (Vec::new(), Vec::new(), Vec::new());
        for row in &current {
            match row.coeffs[v].cmp(&BigRational::zero()) {
                std::cmp::Ordering::Greater => pos.push(row),
                std::cmp::Ordering::Less => neg.push(row),
                std::cmp::Ordering::Equal => rest.push(row.clone()),
            }
        }
        for p in &pos {
            for q in &neg {
                // (-q_v) * p + p_v * q eliminates v with nonnegative weights.
                let a = -q.coeffs[v].clone();
                let b = p.coeffs[v].clone();
                let combined = Row {
                    coeffs: p.coeffs.iter().zip(&q.coeffs).map(|(x, y)| &a * x + &b * y).collect(),
                    rhs: &a * &p.rhs + &b * &q.rhs,
                    multipliers: p
                        .multipliers
                        .iter()
                        .zip(&q.multipliers)
                        .map(|(x, y)| &a * x + &b * y)
                        .collect(),
                };
                rest.push(normalize(combined));
            }
        }
        dedup(&mut rest);
        stages.push(current);
        current = rest;
    }
    if let Some(bad) = current.iter().find(|row| row.rhs.is_positive()) {
        return Err(bad.multipliers.clone());
    }

    // Back substitution: stage i (counted from the end) constrains z_0..z_v.
    let mut z = vec![BigRational::zero(); vars];
    for v in 0..vars {
        let stage = &stages[vars - 1 - v];
        let mut lower: Option<BigRational> = None;
        let mut upper: Option<BigRational> = None;
        for row in stage {
            let c = &row.coeffs[v];
            if c.is_zero() {
                continue;
            }
            let partial: BigRational = (0..v).map(|t| &row.coeffs[t] * &z[t]).sum();
            let bound = (&row.rhs - partial) / c;
            if c.is_positive() {
                if lower.as_ref().is_none_or(|lb| &bound > lb) {
                    lower = Some(bound);
                }
            } else if upper.as_ref().is_none_or(|ub| &bound < ub) {
                upper = Some(bound);
            }
        }
        z[v] = pick_value(lower, upper);
    }
    Ok(z)
}

/// Smallest-magnitude integer in the interval when one exists, else the
/// lower end.
fn pick_value(lower: Option<BigRational>, upper: Option<BigRational>) -> BigRational {
    match (lower, upper) {
        (None, None) => BigRational::zero(),
        (Some(lb), None) => {
            if lb.is_positive() {
                lb.ceil()
            } else {
                BigRational::zero()
            }
        }
        (None, Some(ub)) => {
            if ub.is_negative() {
                ub.floor()
            } else {
                BigRational::zero()
            }
        }
        (Some(lb), Some(ub)) => {
            let candidate = if lb.is_positive() {
                lb.ceil()
            } else if ub.is_negative() {
                ub.floor()
            } else {
                BigRational::zero()
            };
            if candidate >= lb && candidate <= ub {
                candidate
            } else {
                lb
            }
        }
    }
}

/// Divides a row by a positive scalar so that its coefficients and rhs are
/// coprime integers, keeping the multipliers consistent.
fn normalize(row: Row) -> Row {
    let mut all: Vec<BigRational> = row.coeffs.clone();
    all.push(row.rhs.clone());
    let den = all.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let g = all
        .iter()
        .map(|q| (q * BigRational::from_integer(den.clone())).to_integer())
        .fold(BigInt::zero(), |acc, x| acc.gcd(&x));
    if g.is_zero() {
        return row;
    }
    let scale = BigRational::new(den, g);
    Row {
        coeffs: row.coeffs.iter().map(|x| x * &scale).collect(),
        rhs: &row.rhs * &scale,
        multipliers: row.multipliers.iter().map(|x| x * &scale).collect(),
    }
}

fn dedup(rows: &mut Vec<Row>) {
    let mut kept: Vec<Row> = Vec::with_capacity(rows.len());
    for row in rows.drain(..) {
        if row.coeffs.iter().all(Zero::is_zero) && !row.rhs.is_positive() {
            continue;
        }
        if let Some(existing) = kept.iter_mut().find(|k| k.coeffs == row.coeffs) {
            if row.rhs > existing.rhs {
                *existing = row;
            }
            continue;
        }
        kept.push(row);
    }
    *rows = kept;
}

/// Turns Farkas multipliers `lambda >= 0` (one per positive coordinate) into
/// an integer kernel vector: `alpha_P = lambda`, and `alpha_Z` solves
/// `L_Z alpha_Z = -L_P lambda`, which is consistent by construction.
fn certificate_vector(l: &IntMatrix, positive: &[usize], zero: &[usize], lambda: &RatVector) -> Vec<BigInt> {
    let m = l.rows();
    let lq = RatMatrix::from_int(l);
    let mut rhs = vec![BigRational::zero(); m];
    for (lam, &p) in lambda.iter().zip(positive) {
        for i in 0..m {
            rhs[i] -= lam * &lq[(i, p)];
        }
    }
    let mut lz = RatMatrix::zeros(m, zero.len());
    for (b, &j) in zero.iter().enumerate() {
        for i in 0..m {
            lz[(i, b)] = lq[(i, j)].clone();
        }
    }
    let mu = if zero.is_empty() {
        Vec::new()
    } else {
        lz.solve(&rhs).expect("Farkas certificate lies in the column space of L_Z")
    };
    let mut full = vec![BigRational::zero(); l.cols()];
    for (lam, &p) in lambda.iter().zip(positive) {
        full[p] = lam.clone();
    }
    for (v, &j) in mu.iter().zip(zero) {
        full[j] = v.clone();
    }
    let (alpha, _) = primitive_integer_multiple(&full);
    debug_assert!(l.mul_vec(&alpha).unwrap().iter().all(Zero::is_zero));
    alpha
}

/// Checks `beta = y^T L` and the sign pattern directly.
pub fn verify_witness(l: &IntMatrix, positive: &[usize], zero: &[usize], w: &PositivityWitness) -> bool {
    if w.y.len() != l.rows() || w.beta.len() != l.cols() {
        return false;
    }
    let beta_q = to_rational(&w.beta);
    let matches = (0..l.cols()).all(|j| {
        let v: BigRational =
            (0..l.rows()).map(|i| &w.y[i] * BigRational::from_integer(l[(i, j)].clone())).sum();
        v == beta_q[j]
    });
    matches
        && positive.iter().all(|&p| w.beta[p].is_positive())
        && zero.iter().all(|&z| w.beta[z].is_zero())
}
