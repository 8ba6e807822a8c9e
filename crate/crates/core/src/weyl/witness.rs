//! Constructive witnesses: simplicity of the weight spaces, the embedded
//! copy of a Weyl algebra when the torus weights are dependent, the
//! subalgebra attached to a fixed coordinate, and the lift of slice
//! operators along `epsilon`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::operator::{p_op, pi_op, u_op, Monomial, OperatorElement};
use super::poly::PiPoly;
use crate::action::TorusAction;
use crate::chars::{epsilon_embed, WeightSpaces};
use crate::error::{Error, Result};
use crate::exactlin::{to_rational, RatMatrix};
use crate::EnumLimit;

fn to_i64(v: &BigInt) -> Result<i64> {
    v.to_i64().ok_or_else(|| Error::InternalConsistency(format!("exponent {v} does not fit in i64")))
}

fn to_i64_vec(v: &[BigInt]) -> Result<Vec<i64>> {
    v.iter().map(to_i64).collect()
}

/// Checks that `u_{mu - lambda} Q^lambda` is a nonzero multiple of `Q^mu`
/// for every ordered pair of basis monomials of `O(Y)_chi`. `max_basis`
/// caps the dimension that will be examined.
pub fn simplicity_witness(a: &TorusAction, chi: &[BigInt], max_basis: u64) -> Result<bool> {
    let ws = WeightSpaces::new(a)?;
    let basis = ws.basis(chi, EnumLimit::default())?;
    EnumLimit(max_basis).check(basis.len() as u128)?;
    let (r, s) = (a.r(), a.s());
    let monos: Vec<Monomial> = basis.into_iter().map(|l| Monomial::new(l, r)).collect::<Result<_>>()?;
    for lam in &monos {
        for mu in &monos {
            let delta: Vec<i64> = mu.lambda.iter().zip(&lam.lambda).map(|(x, y)| x - y).collect();
            let u = u_op(r, s, &delta);
            if !u.is_invariant(a) {
                return Ok(false);
            }
            let out = u.apply(lam)?;
            if out.len() != 1 || out[0].mono != *mu || out[0].coeff.is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Operators `Qop`, `Pop` and their product spanning a copy of a rank-one
/// Weyl algebra inside `D(Y)^G` when the torus weights are dependent.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NoFdmWitness {
    /// `sum_i c_i eta_{r+i} = 0`, indexed over the torus coordinates.
    #[serde(with = "crate::serde_big")]
    pub relation: Vec<BigInt>,
    /// Zero-based coordinate (at least `r`) playing the role of the last
    /// one; its coefficient `c` is positive.
    pub pivot: usize,
    #[serde(with = "crate::serde_big")]
    pub c: BigInt,
    /// `prod_{i > r} Q_i^{c_i}`
    pub q_op: OperatorElement,
    /// `P_pivot^c prod_{i > r, i != pivot} Q_i^{-c_i}`
    pub p_op: OperatorElement,
    /// `Pop * Qop`
    pub pq_op: OperatorElement,
}

/// Builds the witness from the first kernel vector of the torus block and
/// verifies `[Pi_pivot, Qop] = c Qop`, `[Pi_pivot, Pop] = -c Pop`,
/// `Pop Qop = prod_{k=1}^c (Pi_pivot + k)`, `Qop Pop = prod_{k=0}^{c-1}
/// (Pi_pivot - k)` and the invariance of all three operators.
pub fn no_fdm_witness(a: &TorusAction) -> Result<NoFdmWitness> {
    let mut relation = a.torus_relation().ok_or(Error::TorusWeightsIndependent)?;
    let (r, s, n) = (a.r(), a.s(), a.n());
    let last = relation.iter().rposition(|c| !c.is_zero()).expect("nonzero relation");
    if relation[last].is_negative() {
        relation.iter_mut().for_each(|c| *c = -c.clone());
    }
    let pivot = r + last;
    let c = relation[last].clone();
    let cs = to_i64_vec(&relation)?;
    let ci = cs[last];

    let mut q_deg = vec![0i64; n];
    q_deg[r..].copy_from_slice(&cs);
    let q = u_op(r, s, &q_deg);
    let mut rest = vec![0i64; n];
    for (k, &x) in cs.iter().enumerate() {
        if k != last {
            rest[r + k] = -x;
        }
    }
    let p = p_op(r, s, pivot).pow(ci as u32).multiply(&u_op(r, s, &rest))?;
    let pq = p.multiply(&q)?;

    let check = |ok: bool, what: &str| -> Result<()> {
        if ok {
            Ok(())
        } else {
            Err(Error::InternalConsistency(format!("witness identity failed: {what}")))
        }
    };
    let h = pi_op(r, s, pivot);
    let cr = BigRational::from_integer(c.clone());
    check(h.commutator(&q)? == q.scale(&cr), "[Pi, Qop] = c Qop")?;
    check(h.commutator(&p)? == p.scale(&-cr.clone()), "[Pi, Pop] = -c Pop")?;
    let rising = (1..=ci).fold(PiPoly::one(n), |acc, k| &acc * &shifted_pi(n, pivot, k));
    let falling = (0..ci).fold(PiPoly::one(n), |acc, k| &acc * &shifted_pi(n, pivot, -k));
    check(pq == OperatorElement::term(r, s, vec![0; n], rising), "Pop Qop")?;
    check(q.multiply(&p)? == OperatorElement::term(r, s, vec![0; n], falling), "Qop Pop")?;
    check(q.is_invariant(a) && p.is_invariant(a) && pq.is_invariant(a), "invariance")?;
    Ok(NoFdmWitness { relation, pivot, c, q_op: q, p_op: p, pq_op: pq })
}

fn shifted_pi(n: usize, i: usize, k: i64) -> PiPoly {
    PiPoly::affine(n, i, BigRational::one(), BigRational::from_integer(BigInt::from(k)))
}

/// Generators `Q_j^e`, `P_j^e`, `Pi_j` of a subalgebra over a fixed
/// coordinate `j`, with `G`-invariant lifts of the first two.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixedCoordinateWitness {
    pub coordinate: usize,
    #[serde(with = "crate::serde_big")]
    pub order: BigInt,
    pub q_power: OperatorElement,
    pub p_power: OperatorElement,
    pub pi: OperatorElement,
    /// `u_alpha` with `alpha = e e_j + (0, x)` and `L alpha = 0`.
    pub q_lift: OperatorElement,
    /// `u_{-alpha}`
    pub p_lift: OperatorElement,
}

pub fn fixed_coordinate_witness(a: &TorusAction, j: usize) -> Result<FixedCoordinateWitness> {
    let (r, s, n) = (a.r(), a.s(), a.n());
    if j >= r {
        return Err(Error::IndexOutOfRange { index: j, bound: r });
    }
    let slice = a.slice_data()?;
    if !slice.fixed_coordinates().contains(&j) {
        return Err(Error::NotAFixedCoordinate(j));
    }
    let order = a
        .torsion_order(j)?
        .ok_or_else(|| Error::InternalConsistency(format!("fixed coordinate {j} has infinite order")))?;
    let e = to_i64(&order)?;

    // e * eta_j must lie in the span of the torus weights: solve for x.
    let eta: Vec<BigInt> = a.matrix().column(j).iter().map(|x| x * &order).collect();
    let torus = RatMatrix::from_int(&a.torus_block());
    let x = torus
        .solve(&to_rational(&eta))
        .filter(|x| x.iter().all(BigRational::is_integer))
        .ok_or_else(|| Error::InternalConsistency(format!("e * eta_{j} is not in the torus weight lattice")))?;
    let mut alpha = vec![0i64; n];
    alpha[j] = e;
    for (k, v) in x.iter().enumerate() {
        alpha[r + k] = -to_i64(&v.to_integer())?;
    }
    let mut q_deg = vec![0i64; n];
    q_deg[j] = e;
    let q_power = u_op(r, s, &q_deg);
    let p_power = p_op(r, s, j).pow(e as u32);
    let pi = pi_op(r, s, j);
    let q_lift = u_op(r, s, &alpha);
    let neg: Vec<i64> = alpha.iter().map(|v| -v).collect();
    let p_lift = u_op(r, s, &neg);
    if !(q_lift.is_invariant(a) && p_lift.is_invariant(a)) {
        return Err(Error::InternalConsistency("lifted witness is not invariant".into()));
    }
    Ok(FixedCoordinateWitness { coordinate: j, order, q_power, p_power, pi, q_lift, p_lift })
}

/// Compares `u_{eps(alpha)} u_{eps(beta)}` on `Y` with `u_alpha u_beta` on
/// `k^r`: the product must have degree `eps(alpha + beta)` and the same
/// coefficient, which may only involve `Pi_1, ..., Pi_r`.
pub fn epsilon_lift_check(a: &TorusAction, alpha: &[BigInt], beta: &[BigInt]) -> Result<bool> {
    let (r, s) = (a.r(), a.s());
    let ea = to_i64_vec(&epsilon_embed(a, alpha)?)?;
    let eb = to_i64_vec(&epsilon_embed(a, beta)?)?;
    let sum: Vec<BigInt> = alpha.iter().zip(beta).map(|(x, y)| x + y).collect();
    let eab = to_i64_vec(&epsilon_embed(a, &sum)?)?;

    let lifted = u_op(r, s, &ea).multiply(&u_op(r, s, &eb))?;
    let slice = u_op(r, 0, &to_i64_vec(alpha)?).multiply(&u_op(r, 0, &to_i64_vec(beta)?))?.embed(s);
    if lifted.degrees() != vec![eab.clone()] {
        return Ok(false);
    }
    let coeff = lifted.coefficient(&eab);
    if coeff.support().iter().any(|&i| i >= r) {
        return Ok(false);
    }
    let mut head = eab[..r].to_vec();
    head.resize(r + s, 0);
    Ok(slice.degrees() == vec![head.clone()] && slice.coefficient(&head) == coeff)
}
