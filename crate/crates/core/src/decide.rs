//! Deciding whether `D(Y)^G` has enough simple finite-dimensional modules,
//! with explicit witnesses for either answer.
//!
//! The answer is "yes" exactly when `G` is transitive on the torus factor and
//! every restricted character `rho_j` is nonzero. In that case a flip set
//! `I` is produced such that negating the weights in `I` leaves only
//! constant invariants; otherwise an obstruction is reported.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::action::TorusAction;
use crate::error::{Error, Result};
use crate::exactlin::{rowspace_feasibility, verify_witness, Feasibility, PositivityWitness};

/// Outcome of testing `O(Y)^G = k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantTest {
    pub trivial: bool,
    /// Functional with `beta_i > 0` on the vector-space coordinates and
    /// `beta_i = 0` on the torus coordinates, when `trivial`.
    pub witness: Option<PositivityWitness>,
    /// Exponent `alpha != 0` of a nonconstant invariant monomial `Q^alpha`,
    /// when not `trivial`.
    #[serde(with = "crate::serde_big")]
    pub invariant: Option<Vec<BigInt>>,
}

pub fn invariants_trivial(a: &TorusAction) -> InvariantTest {
    let r = a.r();
    let n = a.n();
    if let Some(c) = a.torus_relation() {
        let mut alpha = vec![BigInt::zero(); r];
        alpha.extend(c);
        return InvariantTest { trivial: false, witness: None, invariant: Some(alpha) };
    }
    let positive: Vec<usize> = (0..r).collect();
    let zero: Vec<usize> = (r..n).collect();
    match rowspace_feasibility(a.matrix(), &positive, &zero) {
        Feasibility::Feasible(w) => InvariantTest { trivial: true, witness: Some(w), invariant: None },
        Feasibility::Infeasible { alpha } => InvariantTest { trivial: false, witness: None, invariant: Some(alpha) },
    }
}

/// A flip set together with the row-space vector it was read from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlipSet {
    /// Zero-based coordinates whose weights are negated.
    pub indices: Vec<usize>,
    /// `beta(t) = sum_i t^i b_i` over the rows `b_i` of `L1`; nowhere zero.
    #[serde(with = "crate::serde_big")]
    pub beta: Vec<BigInt>,
    pub t: u64,
}

/// Searches `t = 1, 2, ...` for a nowhere-zero `beta(t)` in the row space of
/// `L1` and flips its negative coordinates. Returns `None` when some
/// `rho_j = 0`.
pub fn find_flip_set(a: &TorusAction) -> Result<Option<FlipSet>> {
    let slice = a.slice_data()?;
    if !slice.fixed_coordinates().is_empty() {
        return Ok(None);
    }
    let l1 = &slice.normal_form.l1;
    let r = a.r();
    // Each coordinate of beta(t) is a nonzero polynomial in t of degree
    // below rows(L1), so fewer than r * rows(L1) + 1 values can fail.
    let max_t = (r * l1.rows()) as u64 + 1;
    for t in 1..=max_t {
        let tt = BigInt::from(t);
        let mut beta = vec![BigInt::zero(); r];
        let mut power = BigInt::from(1);
        for i in 0..l1.rows() {
            for (b, x) in beta.iter_mut().zip(l1.row(i)) {
                *b += &power * x;
            }
            power *= &tt;
        }
        if beta.iter().all(|b| !b.is_zero()) {
            let indices = (0..r).filter(|&j| beta[j].is_negative()).collect();
            return Ok(Some(FlipSet { indices, beta, t }));
        }
    }
    Err(Error::InternalConsistency(format!("no nowhere-zero beta(t) found for t <= {max_t}")))
}

pub fn flip_action(a: &TorusAction, flip: &[usize]) -> Result<TorusAction> {
    a.flip(flip)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GkDimensions {
    /// `2n - m`
    pub full: i64,
    /// `2(n - m)`
    pub fiber: i64,
    /// The formulas are meant for faithful actions; `false` flags that the
    /// input is not.
    pub faithful: bool,
}

pub fn gk_dimensions(a: &TorusAction) -> GkDimensions {
    let n = a.n() as i64;
    let m = a.m() as i64;
    GkDimensions { full: 2 * n - m, fiber: 2 * (n - m), faithful: a.is_faithful() }
}

/// Why `D(Y)^G` has no nonzero finite-dimensional module.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Obstruction {
    /// `sum_i c_i eta_{r+1+i} = 0` with `c != 0`.
    DependentTorusWeights {
        #[serde(with = "crate::serde_big")]
        relation: Vec<BigInt>,
    },
    /// `rho_j = 0`; the stabilizer acts on `Q_j` through a character of
    /// order `torsion_order`.
    FixedCoordinate {
        coordinate: usize,
        #[serde(with = "crate::serde_big")]
        torsion_order: BigInt,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub m: usize,
    pub n: usize,
    pub r: usize,
    pub s: usize,
    pub transitive: bool,
    /// `V^{H^o} = 0`; reported `false` when the action is not transitive.
    pub fixed_trivial: bool,
    pub enough_fdm: bool,
    pub invariants_trivial: bool,
    pub gk_full: i64,
    pub gk_fiber: i64,
    pub faithful: bool,
    pub flip_set: Option<FlipSet>,
    pub positivity_witness: Option<PositivityWitness>,
    /// Exponent of a nonconstant invariant monomial when `O(Y)^G != k`.
    #[serde(with = "crate::serde_big")]
    pub invariant_certificate: Option<Vec<BigInt>>,
    pub obstruction: Option<Obstruction>,
    pub advisories: Vec<String>,
}

/// Full analysis. Both the row-space feasibility test and the
/// fixed-coordinate criterion are evaluated, together with the flip-set
/// construction; any disagreement between them is returned as
/// [`Error::InternalConsistency`].
pub fn analyze(a: &TorusAction) -> Result<AnalysisReport> {
    let r = a.r();
    let transitive = a.is_transitive_on_torus();
    let gk = gk_dimensions(a);
    let inv = invariants_trivial(a);
    check_invariant_test(a, &inv)?;

    let mut advisories = Vec::new();
    if !gk.faithful {
        advisories.push("action is not faithful; GK formulas 2n - m and 2(n - m) assume faithfulness".to_string());
    }

    let (fixed_trivial, flip_set, obstruction) = if transitive {
        let slice = a.slice_data()?;
        let fixed = slice.fixed_coordinates();
        for j in 0..r {
            let finite = a.torsion_order(j)?.is_some();
            if finite != fixed.contains(&j) {
                return Err(Error::InternalConsistency(format!(
                    "rho_{j} vanishing disagrees with the torsion computation"
                )));
            }
        }
        let flip = find_flip_set(a)?;
        match (fixed.first(), flip) {
            (None, Some(flip)) => {
                let flipped = a.flip(&flip.indices)?;
                let check = invariants_trivial(&flipped);
                if !check.trivial {
                    return Err(Error::InternalConsistency(
                        "flipped action still has nonconstant invariants".into(),
                    ));
                }
                (true, Some(flip), None)
            }
            (Some(&j), None) => {
                let e = a.torsion_order(j)?.expect("fixed coordinate has finite order");
                (false, None, Some(Obstruction::FixedCoordinate { coordinate: j, torsion_order: e }))
            }
            _ => {
                return Err(Error::InternalConsistency(
                    "flip-set search disagrees with the fixed-coordinate criterion".into(),
                ))
            }
        }
    } else {
        let relation = a.torus_relation().expect("dependent torus weights have a relation");
        (false, None, Some(Obstruction::DependentTorusWeights { relation }))
    };

    if inv.trivial && !(transitive && fixed_trivial) {
        return Err(Error::InternalConsistency(
            "constant invariants but the fixed-coordinate criterion fails".into(),
        ));
    }

    Ok(AnalysisReport {
        m: a.m(),
        n: a.n(),
        r,
        s: a.s(),
        transitive,
        fixed_trivial,
        enough_fdm: transitive && fixed_trivial,
        invariants_trivial: inv.trivial,
        gk_full: gk.full,
        gk_fiber: gk.fiber,
        faithful: gk.faithful,
        flip_set,
        positivity_witness: inv.witness,
        invariant_certificate: inv.invariant,
        obstruction,
        advisories,
    })
}

fn check_invariant_test(a: &TorusAction, inv: &InvariantTest) -> Result<()> {
    let r = a.r();
    let n = a.n();
    if let Some(w) = &inv.witness {
        let positive: Vec<usize> = (0..r).collect();
        let zero: Vec<usize> = (r..n).collect();
        if !verify_witness(a.matrix(), &positive, &zero, w) {
            return Err(Error::InternalConsistency("positivity witness fails verification".into()));
        }
    }
    if let Some(alpha) = &inv.invariant {
        let image = a.matrix().mul_vec(alpha)?;
        let ok = image.iter().all(Zero::is_zero)
            && alpha[..r].iter().all(|x| !x.is_negative())
            && alpha.iter().any(|x| !x.is_zero());
        if !ok {
            return Err(Error::InternalConsistency("invariant certificate fails verification".into()));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn act(rows: &[Vec<i64>], r: usize, s: usize) -> TorusAction {
        TorusAction::from_rows(rows, r, s).unwrap()
    }

    fn ints(v: &[BigInt]) -> Vec<i64> {
        v.iter().map(|x| x.try_into().unwrap()).collect()
    }

    #[test]
    fn invariants_of_small_actions() {
        let t = invariants_trivial(&act(&[vec![1, 1]], 2, 0));
        assert!(t.trivial);
        assert_eq!(ints(&t.witness.unwrap().beta), vec![1, 1]);

        let t = invariants_trivial(&act(&[vec![1, -1]], 2, 0));
        assert!(!t.trivial);
        assert_eq!(ints(&t.invariant.unwrap()), vec![1, 1]);

        let t = invariants_trivial(&act(&[vec![1, 1, 0], vec![0, 0, 1]], 2, 1));
        assert!(t.trivial);
        assert_eq!(ints(&t.witness.unwrap().beta), vec![1, 1, 0]);
    }

    #[test]
    fn flip_sets() {
        let f = find_flip_set(&act(&[vec![1, 1]], 2, 0)).unwrap().unwrap();
        assert!(f.indices.is_empty());
        let a = act(&[vec![1, -1]], 2, 0);
        let f = find_flip_set(&a).unwrap().unwrap();
        assert_eq!(f.indices, vec![1]);
        assert_eq!(flip_action(&a, &f.indices).unwrap(), act(&[vec![1, 1]], 2, 0));
        assert!(invariants_trivial(&flip_action(&a, &f.indices).unwrap()).trivial);
        assert_eq!(find_flip_set(&act(&[vec![0, 1]], 1, 1)).unwrap(), None);
        assert_eq!(find_flip_set(&act(&[vec![0, 0]], 1, 1)), Err(Error::NotTransitive));
    }

    #[test]
    fn flip_search_needs_larger_t() {
        // beta(1) = (0, 0), so the search moves on to t = 2
        let a = act(&[vec![1, -1], vec![-1, 1]], 2, 0);
        let f = find_flip_set(&a).unwrap().unwrap();
        assert!(f.beta.iter().all(|b| !b.is_zero()));
        assert!(invariants_trivial(&a.flip(&f.indices).unwrap()).trivial);
    }

    #[test]
    fn gk_numbers() {
        assert_eq!(gk_dimensions(&act(&[vec![1, 1]], 2, 0)).full, 3);
        let g = gk_dimensions(&act(&[vec![1, 0, 1, 0], vec![0, 1, 0, 1]], 4, 0));
        assert_eq!((g.full, g.fiber), (6, 4));
        let g = gk_dimensions(&act(&[vec![1, 1, 0], vec![0, 0, 1]], 2, 1));
        assert_eq!((g.full, g.fiber), (4, 2));
    }

    #[test]
    fn analyze_examples() {
        let rep = analyze(&act(&[vec![1, 1, 0], vec![0, 0, 1]], 2, 1)).unwrap();
        assert!(rep.enough_fdm);
        assert_eq!(rep.gk_full, 4);
        assert!(rep.flip_set.is_some() && rep.obstruction.is_none());

        let rep = analyze(&act(&[vec![0, 0]], 1, 1)).unwrap();
        assert!(!rep.transitive && !rep.enough_fdm);
        match rep.obstruction {
            Some(Obstruction::DependentTorusWeights { relation }) => {
                assert_eq!(ints(&relation).iter().map(|x| x.abs()).collect::<Vec<_>>(), vec![1])
            }
            other => panic!("{other:?}"),
        }

        let rep = analyze(&act(&[vec![0, 1]], 1, 1)).unwrap();
        assert!(rep.transitive && !rep.fixed_trivial && !rep.enough_fdm);
        assert_eq!(
            rep.obstruction,
            Some(Obstruction::FixedCoordinate { coordinate: 0, torsion_order: BigInt::from(1) })
        );
    }

    #[test]
    fn non_faithful_inputs_are_flagged() {
        let rep = analyze(&act(&[vec![2, 2]], 2, 0)).unwrap();
        assert!(!rep.faithful);
        assert!(!rep.advisories.is_empty());
        assert!(rep.enough_fdm);
    }
}
