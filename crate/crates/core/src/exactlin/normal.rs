//! Hermite and Smith normal forms with unimodular transforms, and the
//! integer kernel built on top of them.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::IntMatrix;

/// Row Hermite normal form: returns `(H, U)` with `U` unimodular and
/// `U * M = H`. Pivots are positive, entries above a pivot lie in
/// `[0, pivot)`, and zero rows are at the bottom.
pub fn hermite_normal_form(m: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let mut h = m.clone();
    let mut u = IntMatrix::identity(m.rows());
    let rows = m.rows();
    let mut pr = 0;
    for col in 0..m.cols() {
        if pr == rows {
            break;
        }
        for i in pr + 1..rows {
            if h[(i, col)].is_zero() {
                continue;
            }
            let a = h[(pr, col)].clone();
            let b = h[(i, col)].clone();
            let e = a.extended_gcd(&b);
            let c = -(&b / &e.gcd);
            let d = &a / &e.gcd;
            h.combine_rows(pr, i, [&e.x, &e.y, &c, &d]);
            u.combine_rows(pr, i, [&e.x, &e.y, &c, &d]);
        }
        if h[(pr, col)].is_zero() {
            continue;
        }
        if h[(pr, col)].is_negative() {
            h.negate_row(pr);
            u.negate_row(pr);
        }
        let pivot = h[(pr, col)].clone();
        for i in 0..pr {
            let q = h[(i, col)].div_floor(&pivot);
            if !q.is_zero() {
                let f = -q;
                h.add_row_multiple(i, pr, &f);
                u.add_row_multiple(i, pr, &f);
            }
        }
        pr += 1;
    }
    (h, u)
}

/// Number of nonzero rows of a Hermite form, i.e. the rank.
pub fn hermite_rank(h: &IntMatrix) -> usize {
    (0..h.rows()).take_while(|&i| h.row(i).iter().any(|x| !x.is_zero())).count()
}

pub fn rank(m: &IntMatrix) -> usize {
    hermite_rank(&hermite_normal_form(m).0)
}

/// Smith normal form result: `left * M * right = form`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithForm {
    pub form: IntMatrix,
    pub left: IntMatrix,
    pub right: IntMatrix,
}

impl SmithForm {
    /// Diagonal entries `d_1 | d_2 | ...`, including trailing zeros.
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.form.rows().min(self.form.cols())).map(|i| self.form[(i, i)].clone()).collect()
    }

    /// Nonzero diagonal entries.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        self.diagonal().into_iter().filter(|d| !d.is_zero()).collect()
    }
}

/// Smith normal form with unimodular `U`, `V` such that `U * M * V = S`,
/// `S` diagonal with nonnegative entries forming a divisibility chain.
pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let rows = m.rows();
    let cols = m.cols();
    let mut a = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);

    'outer: for t in 0..rows.min(cols) {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if a[(i, j)].is_zero() {
                        continue;
                    }
                    if best.is_none_or(|(bi, bj)| a[(i, j)].abs() < a[(bi, bj)].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else {
                break 'outer;
            };
            a.swap_rows(t, bi);
            u.swap_rows(t, bi);
            a.swap_cols(t, bj);
            v.swap_cols(t, bj);

            let mut clean = true;
            for i in t + 1..rows {
                let q = &a[(i, t)] / &a[(t, t)];
                if !q.is_zero() {
                    a.add_row_multiple(i, t, &-&q);
                    u.add_row_multiple(i, t, &-&q);
                }
                clean &= a[(i, t)].is_zero();
            }
            for j in t + 1..cols {
                let q = &a[(t, j)] / &a[(t, t)];
                if !q.is_zero() {
                    a.add_col_multiple(j, t, &-&q);
                    v.add_col_multiple(j, t, &-&q);
                }
                clean &= a[(t, j)].is_zero();
            }
            if !clean {
                continue;
            }
            let pivot = a[(t, t)].clone();
            let offender = (t + 1..rows)
                .find(|&i| (t + 1..cols).any(|j| !a[(i, j)].is_multiple_of(&pivot)));
            match offender {
                Some(i) => {
                    let one = BigInt::from(1);
                    a.add_row_multiple(t, i, &one);
                    u.add_row_multiple(t, i, &one);
                }
                None => break,
            }
        }
        if a[(t, t)].is_negative() {
            a.negate_row(t);
            u.negate_row(t);
        }
    }
    SmithForm { form: a, left: u, right: v }
}

/// Basis of the integer kernel `{x in Z^n : M x = 0}`. The basis is
/// saturated: every integer solution is an integer combination of it.
pub fn kernel_basis(m: &IntMatrix) -> Vec<Vec<BigInt>> {
    let (h, u) = hermite_normal_form(&m.transpose());
    let k = hermite_rank(&h);
    (k..u.rows()).map(|i| u.row(i).to_vec()).collect()
}

/// Integer basis (as rows) of the saturated row lattice of `M`, which is the
/// rational row space intersected with `Z^n`. Computed as the integer
/// kernel of the integer kernel.
pub fn saturated_row_lattice(m: &IntMatrix) -> IntMatrix {
    let n = m.cols();
    let kernel = kernel_basis(m);
    if kernel.is_empty() {
        return IntMatrix::identity(n);
    }
    let k = IntMatrix::from_rows(&kernel).expect("kernel rows share a length");
    let rows = kernel_basis(&k);
    if rows.is_empty() {
        return IntMatrix::zeros(0, n);
    }
    IntMatrix::from_rows(&rows).expect("kernel rows share a length")
}
