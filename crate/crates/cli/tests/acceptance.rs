//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any
//! failure. Corpora are drawn from fixed ChaCha seeds, and every check uses
//! plain `i64` oracles that do not go through the library's lattice code.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;
use torweyl::chars::{dimension_series, epsilon_embed_original, quotient_iso_check, weight_space_dim, WeightSpaces};
use torweyl::decide::{find_flip_set, invariants_trivial};
use torweyl::weyl::{
    epsilon_lift_check, no_fdm_witness, p_op, pi_op, q_op, simplicity_witness, u_op, Monomial, OperatorElement, PiPoly,
};
use torweyl::{analyze, EnumLimit, Error, Obstruction, TorusAction};

type Rows = Vec<Vec<i64>>;

fn q(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

fn big(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

fn small(v: &[BigInt]) -> Vec<i64> {
    v.iter().map(|x| x.to_i64().expect("small entry")).collect()
}

fn mat_vec(rows: &[Vec<i64>], v: &[i64]) -> Vec<i64> {
    rows.iter().map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
}

fn columns(rows: &[Vec<i64>], from: usize, to: usize) -> Rows {
    rows.iter().map(|row| row[from..to].to_vec()).collect()
}

fn for_box(lo: &[i64], hi: &[i64], mut f: impl FnMut(&[i64])) {
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

fn det(m: &[Vec<i64>]) -> i64 {
    match m.len() {
        0 => 1,
        1 => m[0][0],
        n => (0..n)
            .map(|j| {
                let minor: Rows = m[1..].iter().map(|row| [&row[..j], &row[j + 1..]].concat()).collect();
                let sign = if j % 2 == 0 { 1 } else { -1 };
                sign * m[0][j] * det(&minor)
            })
            .sum(),
    }
}

fn subsets(m: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for mask in 0u32..1 << m {
        if mask.count_ones() as usize == k {
            out.push((0..m).filter(|&i| mask & (1 << i) != 0).collect());
        }
    }
    out
}

fn rank(cols: &[Vec<i64>], rows: usize) -> usize {
    let k = cols.len();
    for size in (1..=k.min(rows)).rev() {
        for cs in subsets(k, size) {
            for rs in subsets(rows, size) {
                let sq: Rows = rs.iter().map(|&i| cs.iter().map(|&j| cols[j][i]).collect()).collect();
                if det(&sq) != 0 {
                    return size;
                }
            }
        }
    }
    0
}

/// Decides `v in B Z^s` for an `m x s` matrix `B` of full column rank by
/// Cramer's rule on an invertible `s x s` row selection.
struct Membership {
    b: Rows,
    sel: Vec<usize>,
    adj: Rows,
    det: i64,
}

impl Membership {
    fn new(b: Rows, m: usize) -> Option<Self> {
        let s = b.first().map_or(0, Vec::len);
        for sel in subsets(m, s) {
            let sq: Rows = sel.iter().map(|&i| b[i].clone()).collect();
            let d = det(&sq);
            if d != 0 {
                let adj = (0..s)
                    .map(|i| {
                        (0..s)
                            .map(|j| {
                                let minor: Rows = (0..s)
                                    .filter(|&r| r != j)
                                    .map(|r| (0..s).filter(|&c| c != i).map(|c| sq[r][c]).collect())
                                    .collect();
                                let sign = if (i + j) % 2 == 0 { 1 } else { -1 };
                                sign * det(&minor)
                            })
                            .collect()
                    })
                    .collect();
                return Some(Membership { b, sel, adj, det: d });
            }
        }
        None
    }

    fn contains(&self, v: &[i64]) -> bool {
        let vs: Vec<i64> = self.sel.iter().map(|&i| v[i]).collect();
        let mut x = Vec::with_capacity(vs.len());
        for row in &self.adj {
            let num: i64 = row.iter().zip(&vs).map(|(a, b)| a * b).sum();
            if num % self.det != 0 {
                return false;
            }
            x.push(num / self.det);
        }
        mat_vec(&self.b, &x) == v
    }
}

fn rows_of(a: &TorusAction) -> Rows {
    a.matrix().to_rows().iter().map(|r| small(r)).collect()
}

fn random_rows(rng: &mut ChaCha8Rng, m: usize, n: usize) -> Rows {
    (0..m).map(|_| (0..n).map(|_| rng.gen_range(-3..=3)).collect()).collect()
}

/// `m <= 3`, `n <= 5`, entries in `[-3, 3]`, transitive on the torus factor.
fn random_transitive(rng: &mut ChaCha8Rng) -> TorusAction {
    loop {
        let m = rng.gen_range(1..=3);
        let n = rng.gen_range(1..=5);
        let s = rng.gen_range(0..=n.min(m));
        let rows = random_rows(rng, m, n);
        if rank(&transpose(&columns(&rows, n - s, n), s), m) == s {
            return TorusAction::from_rows(&rows, n - s, s).unwrap();
        }
    }
}

fn transpose(rows: &[Vec<i64>], cols: usize) -> Rows {
    (0..cols).map(|j| rows.iter().map(|r| r[j]).collect()).collect()
}

fn random_dependent(rng: &mut ChaCha8Rng) -> TorusAction {
    loop {
        let m = rng.gen_range(1..=3);
        let n = rng.gen_range(1..=5);
        let s = rng.gen_range(1..=n);
        let r = n - s;
        let mut rows = random_rows(rng, m, n);
        if s <= m {
            let coeffs: Vec<i64> = (0..s - 1).map(|_| rng.gen_range(-1..=1)).collect();
            for row in rows.iter_mut() {
                row[n - 1] = (0..s - 1).map(|k| coeffs[k] * row[r + k]).sum();
            }
        }
        if rows.iter().flatten().all(|x| x.abs() <= 3) {
            return TorusAction::from_rows(&rows, r, s).unwrap();
        }
    }
}

fn random_poly(rng: &mut ChaCha8Rng, n: usize) -> PiPoly {
    let k = rng.gen_range(1..=3);
    PiPoly::from_terms(n, (0..k).map(|_| ((0..n).map(|_| rng.gen_range(0..=2)).collect(), q(rng.gen_range(-3..=3)))))
}

fn random_operator(rng: &mut ChaCha8Rng, r: usize, s: usize) -> OperatorElement {
    let n = r + s;
    let k = rng.gen_range(1..=3);
    (0..k).fold(OperatorElement::zero(r, s), |acc, _| {
        let alpha: Vec<i64> = (0..n).map(|_| rng.gen_range(-2..=2)).collect();
        &acc + &OperatorElement::term(r, s, alpha, random_poly(rng, n))
    })
}

fn random_monomial(rng: &mut ChaCha8Rng, r: usize, s: usize) -> Monomial {
    let lambda = (0..r + s).map(|i| if i < r { rng.gen_range(0..=5) } else { rng.gen_range(-5..=5) }).collect();
    Monomial::new(lambda, r).unwrap()
}

fn random_shape(rng: &mut ChaCha8Rng) -> (usize, usize) {
    let n = rng.gen_range(1..=3);
    let r = rng.gen_range(0..=n);
    (r, n - r)
}

fn check(ok: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what())
    }
}

fn cli_json(args: &[&str]) -> Result<Value, String> {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("torweyl").chain(args.iter().copied());
    let code = torweyl_cli::run_with(argv, &mut out, &mut err);
    check(code == 0, || format!("{args:?} exited {code}: {}", String::from_utf8_lossy(&err)))?;
    serde_json::from_slice(&out).map_err(|e| e.to_string())
}

fn criterion_1() -> Result<String, String> {
    let cases: [(&[&str], usize, i64); 3] =
        [(&["--family", "odd", "--n", "2"], 1, 3), (&["--family", "even", "--n", "4"], 2, 6), (&["--family", "gk4"], 1, 4)];
    let mut slowest = Duration::ZERO;
    for (args, count, gk) in cases {
        let start = Instant::now();
        let doc = cli_json(&[&["examples"], args].concat())?;
        let elapsed = start.elapsed();
        slowest = slowest.max(elapsed);
        check(elapsed < Duration::from_secs(1), || format!("{args:?} took {elapsed:?}"))?;
        let examples = doc["result"]["examples"].as_array().ok_or("no examples")?;
        check(examples.len() == count, || format!("{args:?}: {} examples", examples.len()))?;
        for ex in examples {
            let an = &ex["analysis"];
            check(an["enough_fdm"] == Value::Bool(true), || format!("{}: enough_fdm false", ex["name"]))?;
            check(an["gk_full"] == gk, || format!("{}: gk_full {}", ex["name"], an["gk_full"]))?;
        }
    }
    let even = cli_json(&["examples", "--family", "even", "--n", "4"])?;
    let patterns: Vec<&Value> = even["result"]["examples"].as_array().unwrap().iter().map(|e| &e["action"]["L"]).collect();
    check(
        patterns == [&serde_json::json!([[1, 0, 1, 0], [0, 1, 0, 1]]), &serde_json::json!([[1, 0, 0, 1], [0, 1, 1, 0]])],
        || format!("even patterns {patterns:?}"),
    )?;
    Ok(format!("odd/even/gk4 verdicts, slowest {slowest:.2?}"))
}

fn criterion_2() -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let start = Instant::now();
    for _ in 0..50 {
        let a = random_dependent(&mut rng);
        let rows = rows_of(&a);
        let (r, n) = (a.r(), a.n());
        check(rank(&transpose(&columns(&rows, r, n), a.s()), a.m()) < a.s(), || "generator".into())?;
        let report = analyze(&a).map_err(|e| e.to_string())?;
        check(!report.enough_fdm && !report.transitive, || format!("{a:?}: verdict"))?;
        let Some(Obstruction::DependentTorusWeights { relation }) = &report.obstruction else {
            return Err(format!("{:?}: obstruction {:?}", rows, report.obstruction));
        };
        let c = small(relation);
        let combo = mat_vec(&columns(&rows, r, n), &c);
        check(c.iter().any(|&x| x != 0) && combo.iter().all(|&x| x == 0), || format!("{rows:?}: relation {c:?}"))?;
        let w = no_fdm_witness(&a).map_err(|e| e.to_string())?;
        for op in [&w.q_op, &w.p_op, &w.pq_op] {
            check(op.is_invariant(&a) && !op.is_zero(), || format!("{rows:?}: {op}"))?;
            for d in op.degrees() {
                check(mat_vec(&rows, &d).iter().all(|&x| x == 0), || format!("{rows:?}: degree {d:?}"))?;
            }
        }
    }
    let elapsed = start.elapsed();
    check(elapsed < Duration::from_secs(5), || format!("took {elapsed:?}"))?;
    Ok(format!("50 dependent actions in {elapsed:.2?}"))
}

fn criterion_3_corpus() -> Vec<TorusAction> {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    (0..200).map(|_| random_transitive(&mut rng)).collect()
}

fn criterion_3(corpus: &[TorusAction]) -> Result<String, String> {
    let start = Instant::now();
    let mut trivial = 0;
    for a in corpus {
        let rows = rows_of(a);
        let (r, n) = (a.r(), a.n());
        let torus = transpose(&columns(&rows, r, n), a.s());
        // rho_j = 0 exactly when eta_j lies in the rational span of the torus weights.
        let oracle = (0..r).all(|j| {
            let mut cols = torus.clone();
            cols.push(rows.iter().map(|row| row[j]).collect());
            rank(&cols, a.m()) > torus.len()
        });
        let fixed = a.fixed_space_trivial().map_err(|e| e.to_string())?;
        let flip = find_flip_set(a).map_err(|e| e.to_string())?;
        let rhs = match &flip {
            Some(f) => invariants_trivial(&a.flip(&f.indices).map_err(|e| e.to_string())?).trivial,
            None => false,
        };
        check(fixed == rhs && fixed == oracle, || format!("{rows:?} r={r}: fixed {fixed}, flip {rhs}, oracle {oracle}"))?;
        if let Some(f) = &flip {
            let flipped: Rows =
                rows.iter().map(|row| (0..n).map(|j| if f.indices.contains(&j) { -row[j] } else { row[j] }).collect()).collect();
            check(rows_of(&a.flip(&f.indices).unwrap()) == flipped, || "flip".into())?;
        }
        trivial += fixed as usize;
    }
    let elapsed = start.elapsed();
    check(elapsed < Duration::from_secs(30), || format!("took {elapsed:?}"))?;
    Ok(format!("200 transitive actions ({trivial} with trivial fixed space), 0 mismatches, {elapsed:.2?}"))
}

/// Characters of dimension at least two, collected for the simplicity run.
type Sweep = Vec<(TorusAction, Vec<BigInt>, u64)>;

fn criterion_4(sweep: &mut Sweep) -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let start = Instant::now();
    let bound = 8i64;
    let mut actions = 0;
    let mut coefficients = 0;
    while actions < 50 {
        let m = rng.gen_range(1..=3);
        let n = rng.gen_range(1..=5);
        let r = rng.gen_range(0..=n);
        let rows = random_rows(&mut rng, m, n);
        let a = TorusAction::from_rows(&rows, r, n - r).unwrap();
        if !invariants_trivial(&a).trivial {
            continue;
        }
        actions += 1;
        let ws = WeightSpaces::new(&a).map_err(|e| e.to_string())?;
        let w = ws.witness();
        // beta = y L, positive on the first r coordinates and zero on the rest.
        let beta: Vec<BigRational> =
            (0..n).map(|j| (0..m).map(|i| &w.y[i] * q(rows[i][j])).fold(q(0), |x, y| x + y)).collect();
        check(beta.iter().enumerate().all(|(j, b)| if j < r { *b > q(0) } else { b.is_zero() }), || {
            format!("{rows:?}: grading {beta:?}")
        })?;
        check(beta.iter().zip(&w.beta).all(|(x, y)| *x == BigRational::from_integer(y.clone())), || "beta".into())?;
        let beta: Vec<i64> = small(&w.beta[..r]);

        let member = Membership::new(columns(&rows, r, n), m).ok_or("torus columns dependent")?;
        let head = columns(&rows, 0, r);
        let cap: Vec<i64> = beta.iter().map(|&b| bound / b).collect();
        let mut by_grade: Vec<Vec<Vec<i64>>> = vec![Vec::new(); bound as usize + 1];
        for_box(&vec![0; r], &cap, |alpha| {
            let g: i64 = alpha.iter().zip(&beta).map(|(x, b)| x * b).sum();
            if g <= bound {
                by_grade[g as usize].push(mat_vec(&head, alpha));
            }
        });

        let series = dimension_series(&a, &q(bound), EnumLimit::default()).map_err(|e| e.to_string())?;
        let mut total = 0;
        for (key, entry) in &series.coefficients {
            let chi = ws.representative(key);
            let chi64 = small(&chi);
            let g = entry.grade.to_usize().ok_or("grade")?;
            check(ws.grade(&chi) == BigRational::from_integer(entry.grade.clone()), || "grade".into())?;
            let brute = by_grade[g]
                .iter()
                .filter(|v| member.contains(&chi64.iter().zip(v.iter()).map(|(c, x)| c - x).collect::<Vec<_>>()))
                .count() as u64;
            let dim = weight_space_dim(&a, &chi).map_err(|e| e.to_string())?;
            check(entry.coefficient == dim && dim == brute, || {
                format!("{rows:?} r={r} chi={chi64:?}: series {}, dim {dim}, brute {brute}", entry.coefficient)
            })?;
            total += dim;
            coefficients += 1;
            if dim >= 2 {
                sweep.push((a.clone(), chi, dim));
            }
        }
        let monomials: u64 = by_grade.iter().map(|g| g.len() as u64).sum();
        check(total == monomials, || format!("{rows:?}: series total {total}, monomials {monomials}"))?;
    }
    let elapsed = start.elapsed();
    check(elapsed < Duration::from_secs(60), || format!("took {elapsed:?}"))?;
    Ok(format!("50 actions, {coefficients} coefficients up to grade {bound}, {elapsed:.2?}"))
}

fn criterion_5(sweep: &Sweep) -> Result<String, String> {
    let start = Instant::now();
    let mut pairs = 0u64;
    for (a, chi, dim) in sweep {
        let (r, s) = (a.r(), a.s());
        check(simplicity_witness(a, chi, *dim).map_err(|e| e.to_string())?, || format!("{a:?} chi={chi:?}"))?;
        let basis = WeightSpaces::new(a).unwrap().basis(chi, EnumLimit::default()).map_err(|e| e.to_string())?;
        check(basis.len() as u64 == *dim, || "basis size".into())?;
        for lambda in &basis {
            let from = Monomial::new(lambda.clone(), r).unwrap();
            for mu in &basis {
                let shift: Vec<i64> = mu.iter().zip(lambda).map(|(x, y)| x - y).collect();
                let image = u_op(r, s, &shift).apply(&from).map_err(|e| e.to_string())?;
                check(image.len() == 1 && image[0].mono.lambda == *mu && !image[0].coeff.is_zero(), || {
                    format!("u_{shift:?} Q^{lambda:?} = {image:?}")
                })?;
                pairs += 1;
            }
        }
    }
    let elapsed = start.elapsed();
    check(elapsed < Duration::from_secs(60), || format!("took {elapsed:?}"))?;
    Ok(format!("{} weight spaces, {pairs} transitions, {elapsed:.2?}", sweep.len()))
}

fn criterion_6() -> Result<String, String> {
    let start = Instant::now();
    for n in 1..=3usize {
        for r in 0..=n {
            let s = n - r;
            let mut failure = None;
            for_box(&vec![-3; n], &vec![3; n], |alpha| {
                let u = u_op(r, s, alpha);
                for (i, &x) in alpha.iter().enumerate() {
                    if pi_op(r, s, i).commutator(&u).unwrap() != u.scale(&q(x)) {
                        failure.get_or_insert(format!("[Pi_{i}, u_{alpha:?}], r={r}"));
                    }
                }
            });
            if let Some(f) = failure {
                return Err(f);
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for _ in 0..200 {
        let (r, s) = random_shape(&mut rng);
        let x = random_operator(&mut rng, r, s);
        let y = random_operator(&mut rng, r, s);
        let z = random_operator(&mut rng, r, s);
        let m = random_monomial(&mut rng, r, s);
        let xy = x.multiply(&y).unwrap();
        let lhs = xy.apply(&m).unwrap();
        let rhs = x.apply_to_combination(&y.apply(&m).unwrap()).unwrap();
        check(lhs == rhs, || format!("({x})({y}) on {m:?}"))?;
        check(xy.multiply(&z).unwrap() == x.multiply(&y.multiply(&z).unwrap()).unwrap(), || format!("{x} | {y} | {z}"))?;
    }
    Ok(format!("grid n <= 3 and 200 triples, {:.2?}", start.elapsed()))
}

fn criterion_7() -> Result<String, String> {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..200 {
        let (r, s) = random_shape(&mut rng);
        let flip: Vec<usize> = (0..r).filter(|_| rng.gen_bool(0.5)).collect();
        let x = random_operator(&mut rng, r, s);
        let y = random_operator(&mut rng, r, s);
        let lhs = x.multiply(&y).unwrap().fourier_transform(&flip).unwrap();
        let rhs = x.fourier_transform(&flip).unwrap().multiply(&y.fourier_transform(&flip).unwrap()).unwrap();
        check(lhs == rhs, || format!("sigma_{flip:?} on ({x})({y})"))?;
        for i in 0..r + s {
            let pi = pi_op(r, s, i);
            let expected = if flip.contains(&i) {
                (&pi + &OperatorElement::identity(r, s)).scale(&q(-1))
            } else {
                pi.clone()
            };
            check(pi.fourier_transform(&flip).unwrap() == expected, || format!("sigma(Pi_{i})"))?;
        }
    }
    let mut graded = 0;
    for _ in 0..100 {
        let m = rng.gen_range(1..=2);
        let n = rng.gen_range(1..=3);
        let r = rng.gen_range(0..=n);
        let s = n - r;
        let rows = random_rows(&mut rng, m, n);
        let a = TorusAction::from_rows(&rows, r, s).unwrap();
        let flip: Vec<usize> = (0..r).filter(|_| rng.gen_bool(0.5)).collect();
        let flipped = a.flip(&flip).unwrap();
        let flipped_rows: Rows =
            rows.iter().map(|row| (0..n).map(|j| if flip.contains(&j) { -row[j] } else { row[j] }).collect()).collect();
        let mut failure = None;
        for_box(&vec![-2; n], &vec![2; n], |alpha| {
            if mat_vec(&rows, alpha).iter().any(|&v| v != 0) {
                return;
            }
            let x = OperatorElement::term(r, s, alpha.to_vec(), random_poly(&mut rng, n));
            let image = x.fourier_transform(&flip).unwrap();
            let degrees_ok = image.degrees().iter().all(|d| mat_vec(&flipped_rows, d).iter().all(|&v| v == 0));
            if !(x.is_invariant(&a) && image.is_invariant(&flipped) && degrees_ok) {
                failure.get_or_insert(format!("{rows:?} alpha={alpha:?} I={flip:?}"));
            }
            graded += 1;
        });
        if let Some(f) = failure {
            return Err(f);
        }
    }
    for r in 1..=3usize {
        for s in 0..=1usize {
            for mask in 0u32..1 << r {
                let flip: Vec<usize> = (0..r).filter(|&i| mask & (1 << i) != 0).collect();
                let one = Monomial::one(r, s);
                for i in 0..r {
                    let (kills, keeps) = if flip.contains(&i) { (q_op(r, s, i), p_op(r, s, i)) } else { (p_op(r, s, i), q_op(r, s, i)) };
                    check(kills.twisted_apply(&flip, &one).unwrap().is_empty(), || format!("annihilator {i} of I={flip:?}"))?;
                    check(!keeps.twisted_apply(&flip, &one).unwrap().is_empty(), || format!("generator {i} of I={flip:?}"))?;
                }
            }
        }
    }
    Ok(format!("200 pairs, {graded} graded invariants, annihilators r <= 3, {:.2?}", start.elapsed()))
}

fn criterion_8(corpus: &[TorusAction]) -> Result<String, String> {
    let start = Instant::now();
    let mut members_seen = 0;
    let mut pools = Vec::new();
    for a in corpus {
        let rows = rows_of(a);
        let (r, n, m) = (a.r(), a.n(), a.m());
        let member = Membership::new(columns(&rows, r, n), m);
        let head = columns(&rows, 0, r);
        let mut pool = Vec::new();
        let mut failure = None;
        for_box(&vec![-3; r], &vec![3; r], |b| {
            let lb: Vec<i64> = mat_vec(&head, b).iter().map(|x| -x).collect();
            let oracle = match &member {
                Some(mem) => mem.contains(&lb),
                None => lb.iter().all(|&x| x == 0),
            };
            match epsilon_embed_original(a, &big(b)) {
                Ok(e) => {
                    let e = small(&e);
                    if !oracle || e[..r] != *b || mat_vec(&rows, &e).iter().any(|&x| x != 0) {
                        failure.get_or_insert(format!("{rows:?}: eps({b:?}) = {e:?}"));
                    }
                    pool.push(b.to_vec());
                }
                Err(Error::NotInT1 | Error::NotInT1Prime) if !oracle => {}
                Err(e) => {
                    failure.get_or_insert(format!("{rows:?}: eps({b:?}) failed: {e}"));
                }
            }
        });
        if let Some(f) = failure {
            return Err(f);
        }
        members_seen += pool.len();
        check(quotient_iso_check(a, 4, EnumLimit::default()).map_err(|e| e.to_string())?, || format!("{rows:?} r={r}"))?;
        if pool.iter().any(|b| b.iter().any(|&x| x != 0)) {
            pools.push((a, pool));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..100 {
        let (a, pool) = pools.choose(&mut rng).ok_or("no action with nonzero slice invariants")?;
        let x = pool.choose(&mut rng).unwrap();
        let y = pool.choose(&mut rng).unwrap();
        check(epsilon_lift_check(a, &big(x), &big(y)).map_err(|e| e.to_string())?, || format!("{a:?}: {x:?}, {y:?}"))?;
    }
    let elapsed = start.elapsed();
    check(elapsed < Duration::from_secs(60), || format!("took {elapsed:?}"))?;
    Ok(format!("{members_seen} lattice points, 200 quotient checks, 100 lifts, {elapsed:.2?}"))
}

fn run(label: &str, f: impl FnOnce() -> Result<String, String>) -> bool {
    let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
        Err(p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default())
    });
    match outcome {
        Ok(detail) => {
            println!("criterion {label}: PASS ({detail})");
            true
        }
        Err(detail) => {
            println!("criterion {label}: FAIL ({detail})");
            false
        }
    }
}

fn main() {
    let corpus = criterion_3_corpus();
    let mut sweep = Sweep::new();
    let results = [
        run("1", criterion_1),
        run("2", criterion_2),
        run("3", || criterion_3(&corpus)),
        run("4", || criterion_4(&mut sweep)),
        run("5", || criterion_5(&sweep)),
        run("6", criterion_6),
        run("7", criterion_7),
        run("8", || criterion_8(&corpus)),
    ];
    if results.iter().any(|ok| !ok) {
        std::process::exit(1);
    }
}
