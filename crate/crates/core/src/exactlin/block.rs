use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::normal::{hermite_normal_form, hermite_rank, smith_normal_form};
use super::IntMatrix;
use crate::error::{Error, Result};

/// A pair of unimodular matrices acting on the left and right.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnimodularPair {
    pub left: IntMatrix,
    pub right: IntMatrix,
}

impl UnimodularPair {
    pub fn is_unimodular(&self) -> bool {
        self.left.is_unimodular() && self.right.is_unimodular()
    }
}

/// `Gamma * L * Delta = [[L1, 0], [L2, D]]` with `D` diagonal and nonsingular
/// and `Delta = diag(I_r, Delta1)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockNormalForm {
    pub pair: UnimodularPair,
    /// The transformed matrix `Gamma * L * Delta`.
    pub transformed: IntMatrix,
    /// `(m - s) x r` block acting on the vector-space coordinates.
    pub l1: IntMatrix,
    /// `s x r` block.
    pub l2: IntMatrix,
    /// Diagonal of `D`, all nonzero.
    #[serde(with = "crate::serde_big")]
    pub d: Vec<BigInt>,
    pub r: usize,
    pub s: usize,
}

impl BlockNormalForm {
    pub fn gamma(&self) -> &IntMatrix {
        &self.pair.left
    }

    pub fn delta(&self) -> &IntMatrix {
        &self.pair.right
    }

    /// The `s x s` block `Delta1` of `Delta`.
    pub fn delta1(&self) -> IntMatrix {
        let n = self.r + self.s;
        self.pair.right.submatrix(self.r..n, self.r..n)
    }

    /// Maps normal-form coordinates back to the original ones: `x -> Delta x`.
    pub fn to_original(&self, x: &[BigInt]) -> Vec<BigInt> {
        self.pair.right.mul_vec(x).expect("length n")
    }
}

/// Constructs the block normal form of `L` (`m x (r+s)`) by splitting the
/// row lattice along the projection onto the last `s` coordinates and
/// diagonalising the remaining `s x s` block with a Smith form.
pub fn block_normal_form(l: &IntMatrix, r: usize, s: usize) -> Result<BlockNormalForm> {
    let n = r + s;
    let m = l.rows();
    if l.cols() != n {
        return Err(Error::ShapeMismatch(format!("L has {} columns, r + s = {n}", l.cols())));
    }
    let torus_block = l.submatrix(0..m, r..n);
    let (h, u1) = hermite_normal_form(&torus_block);
    if hermite_rank(&h) < s {
        return Err(Error::DependentTorusWeights);
    }
    // U1 * L has the nonsingular torus block in its first s rows and zeros
    // below; move those s rows to the bottom.
    let mut gamma1 = IntMatrix::zeros(m, m);
    for i in 0..m {
        let src = if i < m - s { s + i } else { i - (m - s) };
        for j in 0..m {
            gamma1[(i, j)] = u1[(src, j)].clone();
        }
    }
    // Put the rows spanning the kernel of the projection into Hermite form so
    // that L1 is canonical. With no torus block, L is left as it is.
    let gamma1 = if s > 0 {
        let top = gamma1.mul(l)?.submatrix(0..m - s, 0..n);
        let (_, u_top) = hermite_normal_form(&top);
        IntMatrix::block_diagonal(&u_top, &IntMatrix::identity(s)).mul(&gamma1)?
    } else {
        gamma1
    };
    let g1l = gamma1.mul(l)?;
    let l3 = g1l.submatrix(m - s..m, r..n);
    let smith = smith_normal_form(&l3);
    let gamma = IntMatrix::block_diagonal(&IntMatrix::identity(m - s), &smith.left).mul(&gamma1)?;
    let delta = IntMatrix::block_diagonal(&IntMatrix::identity(r), &smith.right);
    let transformed = gamma.mul(l)?.mul(&delta)?;
    let l1 = transformed.submatrix(0..m - s, 0..r);
    let l2 = transformed.submatrix(m - s..m, 0..r);
    let d: Vec<BigInt> = (0..s).map(|i| transformed[(m - s + i, r + i)].clone()).collect();
    debug_assert!(d.iter().all(|x| !x.is_zero()));
    debug_assert!(transformed.submatrix(0..m - s, r..n).is_zero());
    Ok(BlockNormalForm { pair: UnimodularPair { left: gamma, right: delta }, transformed, l1, l2, d, r, s })
}
