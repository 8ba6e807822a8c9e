use std::fmt::Write as _;

use anyhow::{Context, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};
use torweyl::chars::{dimension_series, quotient_iso_check, SeriesKey, WeightSpaces};
use torweyl::decide::invariants_trivial;
use torweyl::serde_big::format_rational;
use torweyl::weyl::{fixed_coordinate_witness, no_fdm_witness, parse_operator, Monomial, ScaledMonomial};
use torweyl::{analyze, EnumLimit, Error, Obstruction, TorusAction};

use crate::families::{self, Family};

/// Result of a command: the JSON payload and its plain-text rendering.
pub struct Output {
    pub result: Value,
    pub text: String,
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("results serialize")
}

fn join<T: ToString>(v: &[T]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

fn one_based(v: &[usize]) -> String {
    join(&v.iter().map(|i| i + 1).collect::<Vec<_>>())
}

fn render_terms(v: &[ScaledMonomial]) -> String {
    if v.is_empty() {
        return "0".into();
    }
    v.iter()
        .map(|t| format!("{} * Q^({})", format_rational(&t.coeff), join(&t.mono.lambda)))
        .collect::<Vec<_>>()
        .join(" + ")
}

pub fn analyze_cmd(a: &TorusAction) -> Result<Output> {
    let report = analyze(a)?;
    let mut text = String::new();
    writeln!(text, "m = {}, n = {}, r = {}, s = {}", report.m, report.n, report.r, report.s)?;
    writeln!(text, "transitive on torus factor: {}", report.transitive)?;
    writeln!(text, "fixed space trivial: {}", report.fixed_trivial)?;
    writeln!(text, "constant invariants only: {}", report.invariants_trivial)?;
    writeln!(text, "enough simple finite-dimensional modules: {}", report.enough_fdm)?;
    writeln!(text, "GK dimension 2n - m = {}, fiber bound 2(n - m) = {}", report.gk_full, report.gk_fiber)?;
    if let Some(f) = &report.flip_set {
        writeln!(text, "flip set I = {{{}}} (t = {})", one_based(&f.indices), f.t)?;
    }
    match &report.obstruction {
        Some(Obstruction::DependentTorusWeights { relation }) => {
            writeln!(text, "obstruction: torus weights satisfy the relation ({})", join(relation))?
        }
        Some(Obstruction::FixedCoordinate { coordinate, torsion_order }) => writeln!(
            text,
            "obstruction: coordinate {} is fixed by the stabilizer identity component (order {})",
            coordinate + 1,
            torsion_order
        )?,
        None => {}
    }
    for adv in &report.advisories {
        writeln!(text, "note: {adv}")?;
    }
    Ok(Output { result: to_value(&report), text })
}

pub fn normal_form_cmd(a: &TorusAction) -> Result<Output> {
    let nf = a.normal_form()?;
    let slice = a.slice_data()?;
    let mut text = String::new();
    writeln!(text, "Gamma = {}", nf.gamma())?;
    writeln!(text, "Delta = {}", nf.delta())?;
    writeln!(text, "Gamma L Delta = {}", nf.transformed)?;
    writeln!(text, "L1 = {}", nf.l1)?;
    writeln!(text, "L2 = {}", nf.l2)?;
    writeln!(text, "D = diag({})", join(&nf.d))?;
    writeln!(text, "component group invariant factors: [{}]", join(&slice.component_group))?;
    Ok(Output { result: json!({ "normal_form": to_value(&nf), "slice": to_value(&slice) }), text })
}

#[derive(Serialize)]
struct DimEntry {
    #[serde(with = "torweyl::serde_big")]
    chi: Vec<BigInt>,
    normal_form_chi: SeriesKey,
    #[serde(with = "torweyl::serde_big")]
    grade: BigRational,
    dimension: u64,
}

pub fn dims_chi_cmd(a: &TorusAction, chi: &[BigInt], limit: EnumLimit) -> Result<Output> {
    let ws = WeightSpaces::new(a)?;
    let basis = ws.basis(chi, limit)?;
    let key = ws.key_of(chi)?;
    let entry = DimEntry { chi: chi.to_vec(), normal_form_chi: key, grade: ws.grade(chi), dimension: basis.len() as u64 };
    let mut text = String::new();
    writeln!(
        text,
        "chi = ({}) ~ free ({}) torsion ({}), grade {}",
        join(chi),
        join(&entry.normal_form_chi.free),
        join(&entry.normal_form_chi.torsion),
        format_rational(&entry.grade)
    )?;
    writeln!(text, "dim = {}", entry.dimension)?;
    for lambda in &basis {
        writeln!(text, "  Q^({})", join(lambda))?;
    }
    let mut result = to_value(&entry);
    result["basis"] = to_value(&basis);
    Ok(Output { result, text })
}

/// Dimensions of all weight spaces with grade at most `bound`. Each is
/// counted directly and compared with the series coefficient.
pub fn dims_sweep_cmd(a: &TorusAction, bound: &BigRational, limit: EnumLimit) -> Result<Output> {
    let ws = WeightSpaces::new(a)?;
    let series = dimension_series(a, bound, limit)?;
    let entries: Vec<(&SeriesKey, u64)> = series.coefficients.iter().map(|(k, e)| (k, e.coefficient)).collect();
    let rows: Vec<DimEntry> = entries
        .par_iter()
        .map(|&(key, coefficient)| -> Result<DimEntry> {
            let chi = ws.representative(key);
            let dimension = ws.dim(&chi, limit)?;
            if dimension != coefficient {
                return Err(Error::InternalConsistency(format!(
                    "dim O(Y)_chi = {dimension} but the series coefficient is {coefficient} at chi = ({})",
                    join(&chi)
                ))
                .into());
            }
            Ok(DimEntry { grade: ws.grade(&chi), chi, normal_form_chi: key.clone(), dimension })
        })
        .collect::<Result<_>>()?;
    let mut text = String::new();
    writeln!(text, "{} weight spaces with grade <= {}", rows.len(), format_rational(bound))?;
    for r in &rows {
        writeln!(text, "  chi = ({})  grade {}  dim {}", join(&r.chi), format_rational(&r.grade), r.dimension)?;
    }
    Ok(Output { result: json!({ "bound": format_rational(bound), "weight_spaces": to_value(&rows) }), text })
}

pub fn series_cmd(a: &TorusAction, bound: &BigRational, limit: EnumLimit) -> Result<Output> {
    let ws = WeightSpaces::new(a)?;
    let series = dimension_series(a, bound, limit)?;
    let mut coefficients = Vec::new();
    let mut text = String::new();
    writeln!(
        text,
        "grading y = ({}), factor grades ({}), torsion orders ({})",
        series.grading.iter().map(format_rational).collect::<Vec<_>>().join(","),
        join(&series.factor_grades),
        join(&series.torsion_orders)
    )?;
    for (key, entry) in &series.coefficients {
        let chi = ws.representative(key);
        writeln!(
            text,
            "  t^({}) tau^({})  grade {}  coefficient {}",
            join(&key.free),
            join(&key.torsion),
            entry.grade,
            entry.coefficient
        )?;
        coefficients.push(json!({
            "key": to_value(key),
            "grade": to_value(&DimGrade(entry.grade.clone())),
            "coefficient": entry.coefficient,
            "chi": to_value(&Ints(chi)),
        }));
    }
    let mut result = to_value(&series);
    result["coefficients"] = Value::Array(coefficients);
    Ok(Output { result, text })
}

#[derive(Serialize)]
struct DimGrade(#[serde(with = "torweyl::serde_big")] BigInt);

#[derive(Serialize)]
struct Ints(#[serde(with = "torweyl::serde_big")] Vec<BigInt>);

pub fn act_cmd(a: &TorusAction, op: &str, mono: &[i64], flip: Option<&[usize]>) -> Result<Output> {
    let (r, s) = (a.r(), a.s());
    let op = parse_operator(op, r, s)?;
    if mono.len() != a.n() {
        return Err(Error::ShapeMismatch(format!("monomial of length {}, expected {}", mono.len(), a.n())).into());
    }
    let m = Monomial::new(mono.to_vec(), r)?;
    let result = match flip {
        Some(i) => op.twisted_apply(i, &m)?,
        None => op.apply(&m)?,
    };
    let invariant = op.is_invariant(a);
    let mut text = String::new();
    writeln!(text, "operator: {op}")?;
    if let Some(i) = flip {
        writeln!(text, "twisted by sigma_I, I = {{{}}}", one_based(i))?;
    }
    writeln!(text, "invariant: {invariant}")?;
    writeln!(text, "result: {}", render_terms(&result))?;
    Ok(Output {
        result: json!({
            "operator": to_value(&op),
            "monomial": mono,
            "flip": flip.map(|i| i.to_vec()),
            "invariant": invariant,
            "result": to_value(&result),
        }),
        text,
    })
}

pub fn witness_cmd(a: &TorusAction) -> Result<Output> {
    let report = analyze(a)?;
    let mut text = String::new();
    let result = if let Some(flip) = &report.flip_set {
        let flipped = a.flip(&flip.indices)?;
        let test = invariants_trivial(&flipped);
        writeln!(text, "flip set I = {{{}}} from beta = ({})", one_based(&flip.indices), join(&flip.beta))?;
        writeln!(text, "flipped weight matrix {} has constant invariants only", flipped.matrix())?;
        json!({
            "kind": "flip_set",
            "flip_set": to_value(flip),
            "flipped_action": to_value(&flipped),
            "flipped_witness": to_value(&test.witness),
        })
    } else {
        match &report.obstruction {
            Some(Obstruction::DependentTorusWeights { .. }) => {
                let w = no_fdm_witness(a)?;
                writeln!(text, "relation ({}) among the torus weights, pivot {}", join(&w.relation), w.pivot + 1)?;
                writeln!(text, "Q = {}", w.q_op)?;
                writeln!(text, "P = {}", w.p_op)?;
                writeln!(text, "PQ = {}", w.pq_op)?;
                json!({ "kind": "dependent_torus_weights", "witness": to_value(&w) })
            }
            Some(Obstruction::FixedCoordinate { coordinate, .. }) => {
                let w = fixed_coordinate_witness(a, *coordinate)?;
                writeln!(text, "fixed coordinate {} with order {}", coordinate + 1, w.order)?;
                writeln!(text, "Q^e = {}", w.q_power)?;
                writeln!(text, "P^e = {}", w.p_power)?;
                writeln!(text, "invariant lifts: {} and {}", w.q_lift, w.p_lift)?;
                json!({ "kind": "fixed_coordinate", "witness": to_value(&w) })
            }
            None => {
                return Err(Error::InternalConsistency("neither a flip set nor an obstruction".into()).into())
            }
        }
    };
    Ok(Output { result, text })
}

pub fn iso_check_cmd(a: &TorusAction, bound: u64, limit: EnumLimit) -> Result<Output> {
    let holds = quotient_iso_check(a, bound, limit)?;
    if !holds {
        return Err(Error::InternalConsistency(format!(
            "epsilon is not a bijection onto the invariant exponents in the box of size {bound}"
        ))
        .into());
    }
    Ok(Output { result: json!({ "bound": bound, "holds": holds }), text: format!("bijection holds up to {bound}\n") })
}

pub fn examples_cmd(family: Family, n: Option<usize>, weights: Option<Vec<i64>>) -> Result<Output> {
    let examples = families::generate(family, n, weights)?;
    let mut text = String::new();
    let mut out = Vec::new();
    for ex in &examples {
        let report = analyze(&ex.action).with_context(|| format!("analysing {}", ex.name))?;
        if report.gk_full != ex.expected_gk {
            return Err(Error::InternalConsistency(format!(
                "{}: GK dimension {} differs from the family value {}",
                ex.name, report.gk_full, ex.expected_gk
            ))
            .into());
        }
        writeln!(
            text,
            "{}: L = {}, r = {}, s = {}, enough_fdm = {}, gk = {}",
            ex.name,
            ex.action.matrix(),
            ex.action.r(),
            ex.action.s(),
            report.enough_fdm,
            report.gk_full
        )?;
        out.push(json!({
            "name": ex.name,
            "action": to_value(&ex.action),
            "expected_gk": ex.expected_gk,
            "analysis": to_value(&report),
        }));
    }
    Ok(Output { result: json!({ "family": to_value(&family), "examples": out }), text })
}
