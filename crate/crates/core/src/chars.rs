//! Weight-space combinatorics: invariant exponents, dimensions of the
//! modules `O(Y)_chi`, the graded dimension series, and the section
//! `beta -> (beta, kappa(beta))` relating slice and global invariants.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::action::TorusAction;
use crate::decide::invariants_trivial;
use crate::error::{Error, Result};
use crate::exactlin::{dot, to_big, BlockNormalForm, IntMatrix, PositivityWitness, RatMatrix};
use crate::EnumLimit;

/// An exponent vector `alpha in N^r x Z^s`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SemigroupElement {
    pub alpha: Vec<i64>,
}

/// Character in normal-form coordinates: the free part in `Z^{m-s}` and the
/// residues of the last `s` coordinates modulo `|d_i|`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SeriesKey {
    #[serde(with = "crate::serde_big")]
    pub free: Vec<BigInt>,
    #[serde(with = "crate::serde_big")]
    pub torsion: Vec<BigInt>,
}

fn to_i64(v: &BigInt) -> Result<i64> {
    v.to_i64().ok_or_else(|| Error::InternalConsistency(format!("exponent {v} does not fit in i64")))
}

fn box_points(r: usize, s: usize, bound: u64) -> u128 {
    let a = (bound as u128 + 1).saturating_pow(r as u32);
    let b = (2 * bound as u128 + 1).saturating_pow(s as u32);
    a.saturating_mul(b)
}

/// Advances `v` through the box `lo[i] <= v[i] <= hi[i]` in lexicographic
/// order; returns `false` after the last point.
fn next_point(v: &mut [i64], lo: &[i64], hi: &[i64]) -> bool {
    for i in (0..v.len()).rev() {
        if v[i] < hi[i] {
            v[i] += 1;
            return true;
        }
        v[i] = lo[i];
    }
    false
}

/// All `alpha in Sigma_L` with `|alpha_i| <= bound`, sorted lexicographically.
pub fn enumerate_invariants(a: &TorusAction, bound: u64, limit: EnumLimit) -> Result<Vec<SemigroupElement>> {
    let (r, s) = (a.r(), a.s());
    limit.check(box_points(r, s, bound))?;
    let b = bound as i64;
    let lo: Vec<i64> = (0..r + s).map(|i| if i < r { 0 } else { -b }).collect();
    let hi = vec![b; r + s];
    let mut v = lo.clone();
    let mut out = Vec::new();
    loop {
        if a.matrix().mul_i64(&v)?.iter().all(Zero::is_zero) {
            out.push(SemigroupElement { alpha: v.clone() });
        }
        if !next_point(&mut v, &lo, &hi) {
            break;
        }
    }
    Ok(out)
}

/// Precomputed data for weight-space queries on an action with only
/// constant invariants.
#[derive(Debug, Clone)]
pub struct WeightSpaces {
    action: TorusAction,
    nf: BlockNormalForm,
    witness: PositivityWitness,
    gamma_inv: IntMatrix,
}

impl WeightSpaces {
    /// Fails with [`Error::NotFiniteDimensional`] unless `O(Y)^G = k`.
    pub fn new(a: &TorusAction) -> Result<Self> {
        let test = invariants_trivial(a);
        let witness = test.witness.ok_or(Error::NotFiniteDimensional)?;
        let nf = a.normal_form()?;
        let gamma_inv = nf.gamma().inverse_unimodular()?;
        Ok(WeightSpaces { action: a.clone(), nf, witness, gamma_inv })
    }

    pub fn action(&self) -> &TorusAction {
        &self.action
    }

    pub fn normal_form(&self) -> &BlockNormalForm {
        &self.nf
    }

    pub fn witness(&self) -> &PositivityWitness {
        &self.witness
    }

    /// `<y, chi>`, which equals `sum_i beta_i alpha_i` for any `alpha` with
    /// `L alpha = chi`.
    pub fn grade(&self, chi: &[BigInt]) -> BigRational {
        self.witness
            .y
            .iter()
            .zip(chi)
            .map(|(y, c)| y * BigRational::from_integer(c.clone()))
            .sum()
    }

    /// `Gamma * chi` split into the free part and the torsion residues.
    pub fn key_of(&self, chi: &[BigInt]) -> Result<SeriesKey> {
        let m = self.action.m();
        let s = self.action.s();
        let t = self.nf.gamma().mul_vec(chi)?;
        let free = t[..m - s].to_vec();
        let torsion = t[m - s..]
            .iter()
            .zip(&self.nf.d)
            .map(|(x, d)| x.mod_floor(&d.abs()))
            .collect();
        Ok(SeriesKey { free, torsion })
    }

    /// A raw character with the given key.
    pub fn representative(&self, key: &SeriesKey) -> Vec<BigInt> {
        let mut t = key.free.clone();
        t.extend(key.torsion.iter().cloned());
        self.gamma_inv.mul_vec(&t).expect("length m")
    }

    /// Exponents of the monomials spanning `O(Y)_chi`, in original
    /// coordinates, sorted lexicographically by their first `r` entries.
    pub fn basis(&self, chi: &[BigInt], limit: EnumLimit) -> Result<Vec<Vec<i64>>> {
        let m = self.action.m();
        let (r, s) = (self.action.r(), self.action.s());
        if chi.len() != m {
            return Err(Error::ShapeMismatch(format!("character of length {}, expected {m}", chi.len())));
        }
        let g = self.grade(chi);
        if g.is_negative() || !g.is_integer() {
            return Ok(Vec::new());
        }
        let g = g.to_integer();
        let beta: Vec<BigInt> = self.witness.beta[..r].to_vec();
        let candidates: u128 = beta
            .iter()
            .map(|b| (&g / b).to_u128().unwrap_or(u128::MAX).saturating_add(1))
            .fold(1u128, |acc, x| acc.saturating_mul(x));
        limit.check(candidates)?;

        let target = self.nf.gamma().mul_vec(chi)?;
        let (top, bottom) = target.split_at(m - s);
        let delta1 = self.nf.delta1();
        let mut out = Vec::new();
        let mut alpha = vec![BigInt::zero(); r];
        let mut visit = |alpha: &[BigInt]| -> Result<()> {
            if self.nf.l1.mul_vec(alpha)? != top {
                return Ok(());
            }
            let l2a = self.nf.l2.mul_vec(alpha)?;
            let mut tail = Vec::with_capacity(s);
            for ((b, x), d) in bottom.iter().zip(&l2a).zip(&self.nf.d) {
                let (q, rem) = (b - x).div_rem(d);
                if !rem.is_zero() {
                    return Ok(());
                }
                tail.push(q);
            }
            let tail = delta1.mul_vec(&tail)?;
            let mut lambda = Vec::with_capacity(r + s);
            for x in alpha.iter().chain(&tail) {
                lambda.push(to_i64(x)?);
            }
            out.push(lambda);
            Ok(())
        };
        for_each_with_weight(&beta, &g, 0, &mut alpha, &mut visit)?;
        Ok(out)
    }

    pub fn dim(&self, chi: &[BigInt], limit: EnumLimit) -> Result<u64> {
        Ok(self.basis(chi, limit)?.len() as u64)
    }
}

/// Calls `f` on every `alpha in N^k` with `sum_i weights[i] alpha_i = total`
/// (all weights positive), in lexicographic order.
fn for_each_with_weight<F>(
    weights: &[BigInt],
    total: &BigInt,
    pos: usize,
    alpha: &mut Vec<BigInt>,
    f: &mut F,
) -> Result<()>
where
    F: FnMut(&[BigInt]) -> Result<()>,
{
    if pos == weights.len() {
        if total.is_zero() {
            f(alpha)?;
        }
        return Ok(());
    }
    let w = &weights[pos];
    let max = total / w;
    let mut k = BigInt::zero();
    while k <= max {
        alpha[pos] = k.clone();
        let rest = total - &k * w;
        for_each_with_weight(weights, &rest, pos + 1, alpha, f)?;
        k += 1;
    }
    alpha[pos] = BigInt::zero();
    Ok(())
}

/// `dim O(Y)_chi` for a raw character `chi in Z^m`.
pub fn weight_space_dim(a: &TorusAction, chi: &[BigInt]) -> Result<u64> {
    WeightSpaces::new(a)?.dim(chi, EnumLimit::default())
}

/// Truncation of the graded series `prod_j (1 - t^{L e_j})^{-1}` over
/// `Z[F][[t]]`, where `F` is the finite group `prod Z/d_i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimensionSeries {
    /// Coefficient and grade of every monomial with grade at most `bound`.
    /// Serialized as a list of `{key, grade, coefficient}` records.
    #[serde(with = "coefficient_list")]
    pub coefficients: BTreeMap<SeriesKey, SeriesEntry>,
    #[serde(with = "crate::serde_big")]
    pub bound: BigRational,
    /// The grading functional on characters.
    #[serde(with = "crate::serde_big")]
    pub grading: Vec<BigRational>,
    /// Grade of each factor, `beta_j > 0`.
    #[serde(with = "crate::serde_big")]
    pub factor_grades: Vec<BigInt>,
    /// Orders of the cyclic torsion factors.
    #[serde(with = "crate::serde_big")]
    pub torsion_orders: Vec<BigInt>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesEntry {
    #[serde(with = "crate::serde_big")]
    pub grade: BigInt,
    pub coefficient: u64,
}

mod coefficient_list {
    use super::*;

    #[derive(Serialize, Deserialize)]
    struct Record {
        key: SeriesKey,
        #[serde(flatten)]
        entry: SeriesEntry,
    }

    pub fn serialize<S: serde::Serializer>(
        map: &BTreeMap<SeriesKey, SeriesEntry>,
        ser: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        let records: Vec<Record> = map.iter().map(|(k, e)| Record { key: k.clone(), entry: e.clone() }).collect();
        records.serialize(ser)
    }

    pub fn deserialize<'de, D: serde::Deserializer<'de>>(
        de: D,
    ) -> std::result::Result<BTreeMap<SeriesKey, SeriesEntry>, D::Error> {
        let records = Vec::<Record>::deserialize(de)?;
        Ok(records.into_iter().map(|r| (r.key, r.entry)).collect())
    }
}

impl DimensionSeries {
    pub fn coefficient(&self, key: &SeriesKey) -> u64 {
        self.coefficients.get(key).map_or(0, |e| e.coefficient)
    }

    pub fn total(&self) -> u64 {
        self.coefficients.values().map(|e| e.coefficient).sum()
    }
}

/// Expands the series factor by factor, keeping monomials whose grade is at
/// most `bound`.
pub fn dimension_series(a: &TorusAction, bound: &BigRational, limit: EnumLimit) -> Result<DimensionSeries> {
    let ws = WeightSpaces::new(a)?;
    let nf = ws.normal_form();
    let r = a.r();
    let beta: Vec<BigInt> = ws.witness().beta[..r].to_vec();
    if let Some(j) = beta.iter().position(|b| !b.is_positive()) {
        return Err(Error::InternalConsistency(format!("factor {j} has non-positive grade")));
    }
    let moduli: Vec<BigInt> = nf.d.iter().map(Signed::abs).collect();
    let reduce = |t: Vec<BigInt>| -> Vec<BigInt> { t.iter().zip(&moduli).map(|(x, d)| x.mod_floor(d)).collect() };

    let zero = SeriesKey { free: vec![BigInt::zero(); nf.l1.rows()], torsion: vec![BigInt::zero(); a.s()] };
    let mut series: BTreeMap<SeriesKey, SeriesEntry> = BTreeMap::new();
    if BigRational::zero() <= *bound {
        series.insert(zero, SeriesEntry { grade: BigInt::zero(), coefficient: 1 });
    }
    let mut visited: u128 = 0;
    for (j, step) in beta.iter().enumerate() {
        let free_step = nf.l1.column(j);
        let tors_step = nf.l2.column(j);
        let mut next: BTreeMap<SeriesKey, SeriesEntry> = BTreeMap::new();
        for (key, entry) in &series {
            let mut cur = key.clone();
            let mut grade = entry.grade.clone();
            while BigRational::from_integer(grade.clone()) <= *bound {
                visited += 1;
                limit.check(visited)?;
                let slot = next
                    .entry(cur.clone())
                    .or_insert_with(|| SeriesEntry { grade: grade.clone(), coefficient: 0 });
                slot.coefficient += entry.coefficient;
                cur = SeriesKey {
                    free: cur.free.iter().zip(&free_step).map(|(x, y)| x + y).collect(),
                    torsion: reduce(cur.torsion.iter().zip(&tors_step).map(|(x, y)| x + y).collect()),
                };
                grade += step;
            }
        }
        series = next;
    }
    Ok(DimensionSeries {
        coefficients: series,
        bound: bound.clone(),
        grading: ws.witness().y.clone(),
        factor_grades: beta,
        torsion_orders: moduli,
    })
}

fn normal_form_for_slice(a: &TorusAction) -> Result<BlockNormalForm> {
    a.normal_form().map_err(|e| match e {
        Error::DependentTorusWeights => Error::NotTransitive,
        other => other,
    })
}

/// `epsilon(beta) = (beta, kappa(beta))` in normal-form coordinates, where
/// `kappa_i = -(L2 beta)_i / d_i`. Requires `L1 beta = 0` and the
/// divisibility of `L2 beta` by `d`.
pub fn epsilon_embed(a: &TorusAction, beta: &[BigInt]) -> Result<Vec<BigInt>> {
    epsilon_with(&normal_form_for_slice(a)?, beta)
}

/// `epsilon(beta)` mapped to the original coordinates by `Delta`; it lies in
/// the kernel of the original `L`.
pub fn epsilon_embed_original(a: &TorusAction, beta: &[BigInt]) -> Result<Vec<BigInt>> {
    let nf = normal_form_for_slice(a)?;
    Ok(nf.to_original(&epsilon_with(&nf, beta)?))
}

fn epsilon_with(nf: &BlockNormalForm, beta: &[BigInt]) -> Result<Vec<BigInt>> {
    if beta.len() != nf.r {
        return Err(Error::ShapeMismatch(format!("beta has length {}, expected {}", beta.len(), nf.r)));
    }
    if !nf.l1.mul_vec(beta)?.iter().all(Zero::is_zero) {
        return Err(Error::NotInT1);
    }
    let gamma = nf.l2.mul_vec(beta)?;
    let mut out = beta.to_vec();
    for (g, d) in gamma.iter().zip(&nf.d) {
        let (q, rem) = g.div_rem(d);
        if !rem.is_zero() {
            return Err(Error::NotInT1Prime);
        }
        out.push(-q);
    }
    Ok(out)
}

/// Checks that `epsilon` is a bijection from the bounded slice invariants
/// `{beta in N^r : |beta_i| <= bound, beta in T1'}` onto the invariant
/// exponents `alpha in Sigma_L` whose first `r` coordinates lie in the same
/// box. The right-hand side is found by solving `L alpha = 0` directly in the
/// original coordinates.
pub fn quotient_iso_check(a: &TorusAction, bound: u64, limit: EnumLimit) -> Result<bool> {
    let nf = normal_form_for_slice(a)?;
    let (r, s, m) = (a.r(), a.s(), a.m());
    limit.check(box_points(r, 0, bound))?;
    let lo = vec![0i64; r];
    let hi = vec![bound as i64; r];

    let mut left: BTreeSet<Vec<BigInt>> = BTreeSet::new();
    let mut point = lo.clone();
    loop {
        let beta = to_big(&point);
        match epsilon_with(&nf, &beta) {
            Ok(e) => {
                left.insert(nf.to_original(&e));
            }
            Err(Error::NotInT1 | Error::NotInT1Prime) => {}
            Err(other) => return Err(other),
        }
        if !next_point(&mut point, &lo, &hi) {
            break;
        }
    }

    // Pick s independent rows of the torus block and invert them.
    let torus = RatMatrix::from_int(&a.torus_block());
    let rows: Vec<usize> = torus.transpose().rref();
    let mut square = RatMatrix::zeros(s, s);
    for (i, &row) in rows.iter().enumerate() {
        for j in 0..s {
            square[(i, j)] = torus[(row, j)].clone();
        }
    }
    let inverse = square.inverse().ok_or(Error::NotTransitive)?;

    let l = a.matrix();
    let mut right: BTreeSet<Vec<BigInt>> = BTreeSet::new();
    let mut point = lo;
    loop {
        let head = to_big(&point);
        let rhs: Vec<BigRational> = rows
            .iter()
            .map(|&i| -BigRational::from_integer(dot(&l.row(i)[..r], &head)))
            .collect();
        let tail = inverse.mul_vec(&rhs);
        if tail.iter().all(BigRational::is_integer) {
            let mut alpha = head;
            alpha.extend(tail.iter().map(BigRational::to_integer));
            if l.mul_vec(&alpha)?.iter().all(Zero::is_zero) {
                right.insert(alpha);
            }
        }
        if !next_point(&mut point, &vec![0; r], &hi) {
            break;
        }
    }
    debug_assert!(m >= s);
    Ok(left == right)
}
