//! Diagonal torus actions on `Y = k^r x (k^x)^s` given by an integer weight
//! matrix, and the slice data at a point of the torus factor.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactlin::{block_normal_form, kernel_basis, rank, smith_normal_form, BlockNormalForm, IntMatrix};

/// The action of `G = (k^x)^m` on `Y` with weight matrix `L` (`m x n`); the
/// first `r` coordinates are affine lines, the last `s` are punctured.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawAction")]
pub struct TorusAction {
    #[serde(rename = "L")]
    l: IntMatrix,
    r: usize,
    s: usize,
}

#[derive(Deserialize)]
struct RawAction {
    #[serde(rename = "L")]
    l: IntMatrix,
    r: usize,
    s: usize,
}

impl TryFrom<RawAction> for TorusAction {
    type Error = Error;

    fn try_from(raw: RawAction) -> Result<Self> {
        TorusAction::new(raw.l, raw.r, raw.s)
    }
}

impl TorusAction {
    pub fn new(l: IntMatrix, r: usize, s: usize) -> Result<Self> {
        if r + s == 0 {
            return Err(Error::EmptyAction("r + s = 0".into()));
        }
        if l.rows() == 0 {
            return Err(Error::EmptyAction("the weight matrix has no rows".into()));
        }
        if l.cols() != r + s {
            return Err(Error::ShapeMismatch(format!(
                "L has {} columns but r + s = {}",
                l.cols(),
                r + s
            )));
        }
        Ok(TorusAction { l, r, s })
    }

    pub fn from_rows(rows: &[Vec<i64>], r: usize, s: usize) -> Result<Self> {
        Self::new(IntMatrix::from_rows(rows)?, r, s)
    }

    /// Rebuilds an action from its weights (the columns of `L`).
    pub fn from_weights(weights: &[Vec<BigInt>], r: usize, s: usize) -> Result<Self> {
        let m = weights.first().map_or(0, Vec::len);
        Self::new(IntMatrix::from_columns(m, weights)?, r, s)
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.l
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn n(&self) -> usize {
        self.r + self.s
    }

    pub fn m(&self) -> usize {
        self.l.rows()
    }

    /// The weights `eta_1, ..., eta_n`, i.e. the columns of `L`.
    pub fn weights(&self) -> Vec<Vec<BigInt>> {
        (0..self.n()).map(|j| self.l.column(j)).collect()
    }

    /// The `m x s` block of torus weights.
    pub fn torus_block(&self) -> IntMatrix {
        self.l.submatrix(0..self.m(), self.r..self.n())
    }

    /// The columns of `L` generate `Z^m`.
    pub fn is_faithful(&self) -> bool {
        let smith = smith_normal_form(&self.l);
        let factors = smith.invariant_factors();
        factors.len() == self.m() && factors.iter().all(One::is_one)
    }

    /// The torus weights are linearly independent over `Q` (vacuous for
    /// `s = 0`).
    pub fn is_transitive_on_torus(&self) -> bool {
        rank(&self.torus_block()) == self.s
    }

    /// A nonzero integer relation `sum_i c_i eta_{r+i} = 0` among the torus
    /// weights, when one exists.
    pub fn torus_relation(&self) -> Option<Vec<BigInt>> {
        kernel_basis(&self.torus_block()).into_iter().next()
    }

    pub fn normal_form(&self) -> Result<BlockNormalForm> {
        block_normal_form(&self.l, self.r, self.s)
    }

    pub fn slice_data(&self) -> Result<SliceData> {
        if !self.is_transitive_on_torus() {
            return Err(Error::NotTransitive);
        }
        let normal_form = self.normal_form()?;
        let rho = (0..self.r).map(|j| normal_form.l1.column(j)).collect();
        let smith = smith_normal_form(&self.torus_block());
        let component_group = smith
            .invariant_factors()
            .into_iter()
            .filter(|d| !d.is_one())
            .collect();
        Ok(SliceData { normal_form, rho, component_group, identity_rank: self.m() - self.s })
    }

    /// `V^{H^o} = 0`, i.e. every restricted character `rho_j` is nonzero.
    pub fn fixed_space_trivial(&self) -> Result<bool> {
        Ok(self.slice_data()?.fixed_coordinates().is_empty())
    }

    /// Order of the character by which the stabilizer `H` acts on `Q_j`,
    /// as an element of the torsion of `Z^m / span(eta_{r+1..n})`. `None`
    /// when that image has infinite order (`rho_j != 0`).
    pub fn torsion_order(&self, j: usize) -> Result<Option<BigInt>> {
        if j >= self.n() {
            return Err(Error::IndexOutOfRange { index: j, bound: self.n() });
        }
        let smith = smith_normal_form(&self.torus_block());
        let image = smith.left.mul_vec(&self.l.column(j))?;
        let diag = smith.diagonal();
        let mut order = BigInt::one();
        for (i, v) in image.iter().enumerate() {
            let d = diag.get(i).cloned().unwrap_or_else(BigInt::zero);
            if d.is_zero() {
                if !v.is_zero() {
                    return Ok(None);
                }
                continue;
            }
            let part = &d / d.gcd(v);
            order = order.lcm(&part);
        }
        Ok(Some(order))
    }

    /// Action with the weights of the coordinates in `flip` negated.
    pub fn flip(&self, flip: &[usize]) -> Result<TorusAction> {
        let mut l = self.l.clone();
        for &j in flip {
            if j >= self.r {
                return Err(Error::IndexOutOfRange { index: j, bound: self.r });
            }
        }
        let mut seen = vec![false; self.r];
        for &j in flip {
            if !std::mem::replace(&mut seen[j], true) {
                l.negate_col(j);
            }
        }
        TorusAction::new(l, self.r, self.s)
    }
}

/// Stabilizer data at a point of the torus factor.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SliceData {
    pub normal_form: BlockNormalForm,
    /// Identity-component parts of the restricted characters: the columns
    /// of `L1`, each of length `identity_rank`.
    #[serde(with = "crate::serde_big")]
    pub rho: Vec<Vec<BigInt>>,
    /// Invariant factors (each > 1) of the finite group `H / H^o`.
    #[serde(with = "crate::serde_big")]
    pub component_group: Vec<BigInt>,
    /// Dimension of `H^o`, equal to `m - s`.
    pub identity_rank: usize,
}

impl SliceData {
    /// Coordinates `j` with `rho_j = 0`.
    pub fn fixed_coordinates(&self) -> Vec<usize> {
        self.rho
            .iter()
            .enumerate()
            .filter(|(_, c)| c.iter().all(Zero::is_zero))
            .map(|(j, _)| j)
            .collect()
    }

    pub fn component_group_order(&self) -> BigInt {
        self.component_group.iter().product()
    }
}
