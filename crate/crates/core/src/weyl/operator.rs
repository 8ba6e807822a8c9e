use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::poly::PiPoly;
use crate::action::TorusAction;
use crate::error::{Error, Result};
use crate::serde_big::{format_rational, parse_rational};

/// An exponent vector `lambda` of a Laurent monomial `Q^lambda in O(Y)`;
/// the first `r` entries are nonnegative.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Monomial {
    pub lambda: Vec<i64>,
    pub r: usize,
}

impl Monomial {
    pub fn new(lambda: Vec<i64>, r: usize) -> Result<Self> {
        if r > lambda.len() {
            return Err(Error::InvalidMonomial(format!("r = {r} exceeds the length {}", lambda.len())));
        }
        if let Some(i) = lambda[..r].iter().position(|&x| x < 0) {
            return Err(Error::InvalidMonomial(format!("exponent {} at affine coordinate {i}", lambda[i])));
        }
        Ok(Monomial { lambda, r })
    }

    pub fn one(r: usize, s: usize) -> Self {
        Monomial { lambda: vec![0; r + s], r }
    }

    pub fn n(&self) -> usize {
        self.lambda.len()
    }
}

/// `coeff * Q^mono`; a zero coefficient always carries the placeholder
/// monomial `Q^0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScaledMonomial {
    #[serde(with = "crate::serde_big")]
    pub coeff: BigRational,
    pub mono: Monomial,
}

impl ScaledMonomial {
    pub fn new(coeff: BigRational, mono: Monomial) -> Self {
        if coeff.is_zero() {
            let (r, s) = (mono.r, mono.n() - mono.r);
            ScaledMonomial { coeff, mono: Monomial::one(r, s) }
        } else {
            ScaledMonomial { coeff, mono }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.is_zero()
    }
}

/// Element `sum_alpha c_alpha(Pi) u_alpha` of `D(Y)` in graded normal form.
/// The first `r` coordinates are affine lines, the rest are punctured.
#[derive(Clone, PartialEq, Eq)]
pub struct OperatorElement {
    r: usize,
    s: usize,
    terms: BTreeMap<Vec<i64>, PiPoly>,
}

impl OperatorElement {
    pub fn zero(r: usize, s: usize) -> Self {
        OperatorElement { r, s, terms: BTreeMap::new() }
    }

    pub fn identity(r: usize, s: usize) -> Self {
        Self::term(r, s, vec![0; r + s], PiPoly::one(r + s))
    }

    /// `c(Pi) u_alpha`
    pub fn term(r: usize, s: usize, alpha: Vec<i64>, c: PiPoly) -> Self {
        assert_eq!(alpha.len(), r + s, "degree of wrong length");
        assert_eq!(c.nvars(), r + s, "coefficient in the wrong number of variables");
        let mut op = Self::zero(r, s);
        op.add_term(alpha, c);
        op
    }

    pub fn constant(r: usize, s: usize, c: BigRational) -> Self {
        Self::term(r, s, vec![0; r + s], PiPoly::constant(r + s, c))
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

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i64>, &PiPoly)> {
        self.terms.iter()
    }

    pub fn degrees(&self) -> Vec<Vec<i64>> {
        self.terms.keys().cloned().collect()
    }

    pub fn coefficient(&self, alpha: &[i64]) -> PiPoly {
        self.terms.get(alpha).cloned().unwrap_or_else(|| PiPoly::zero(self.n()))
    }

    fn add_term(&mut self, alpha: Vec<i64>, c: PiPoly) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(alpha) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get() + &c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    fn check_shape(&self, other: &OperatorElement) -> Result<()> {
        if (self.r, self.s) == (other.r, other.s) {
            Ok(())
        } else {
            Err(Error::ShapeMismatch(format!(
                "operators on (r, s) = ({}, {}) and ({}, {})",
                self.r, self.s, other.r, other.s
            )))
        }
    }

    pub fn add(&self, other: &OperatorElement) -> Result<OperatorElement> {
        self.check_shape(other)?;
        let mut out = self.clone();
        for (a, c) in &other.terms {
            out.add_term(a.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &OperatorElement) -> Result<OperatorElement> {
        self.add(&other.scale(&-BigRational::one()))
    }

    pub fn scale(&self, c: &BigRational) -> OperatorElement {
        let mut out = Self::zero(self.r, self.s);
        for (a, p) in &self.terms {
            out.add_term(a.clone(), p.scale(c));
        }
        out
    }

    /// Left multiplication by a coefficient polynomial.
    pub fn left_mul_poly(&self, c: &PiPoly) -> OperatorElement {
        let mut out = Self::zero(self.r, self.s);
        for (a, p) in &self.terms {
            out.add_term(a.clone(), c * p);
        }
        out
    }

    /// The normal-ordered product `self * other`.
    pub fn multiply(&self, other: &OperatorElement) -> Result<OperatorElement> {
        self.check_shape(other)?;
        let n = self.n();
        let mut out = Self::zero(self.r, self.s);
        for (alpha, c) in &self.terms {
            let neg: Vec<i64> = alpha.iter().map(|x| -x).collect();
            for (beta, d) in &other.terms {
                // c u_alpha d u_beta = c d(Pi - alpha) u_alpha u_beta
                let (f, gamma) = degree_product(self.r, n, alpha, beta);
                let coeff = &(c * &d.shift(&neg)) * &f;
                out.add_term(gamma, coeff);
            }
        }
        Ok(out)
    }

    /// Commutator `self * other - other * self`.
    pub fn commutator(&self, other: &OperatorElement) -> Result<OperatorElement> {
        self.multiply(other)?.sub(&other.multiply(self)?)
    }

    pub fn pow(&self, k: u32) -> OperatorElement {
        let mut out = Self::identity(self.r, self.s);
        for _ in 0..k {
            out = out.multiply(self).expect("same shape");
        }
        out
    }

    /// Action on `Q^lambda`. Terms taking `lambda` out of the monomial cone,
    /// or with vanishing coefficient, are dropped; the result is sorted by
    /// monomial and empty for zero.
    pub fn apply(&self, m: &Monomial) -> Result<Vec<ScaledMonomial>> {
        if m.n() != self.n() || m.r != self.r {
            return Err(Error::ShapeMismatch(format!(
                "monomial of shape ({}, {}) for operators on ({}, {})",
                m.r,
                m.n() - m.r,
                self.r,
                self.s
            )));
        }
        let mut out: BTreeMap<Vec<i64>, BigRational> = BTreeMap::new();
        'terms: for (alpha, c) in &self.terms {
            let mut factor = BigInt::one();
            let mut target = Vec::with_capacity(self.n());
            for (i, (&l, &a)) in m.lambda.iter().zip(alpha).enumerate() {
                let t = l + a;
                if i < self.r {
                    if t < 0 {
                        continue 'terms;
                    }
                    if a < 0 {
                        // P^{-a} Q^l = l! / (l + a)! Q^{l + a}
                        for k in (t + 1)..=l {
                            factor *= k;
                        }
                    }
                }
                target.push(t);
            }
            let at: Vec<BigInt> = target.iter().map(|&x| BigInt::from(x)).collect();
            let value = c.eval(&at) * BigRational::from_integer(factor);
            if value.is_zero() {
                continue;
            }
            let slot = out.entry(target).or_insert_with(BigRational::zero);
            *slot += value;
        }
        Ok(out
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(lambda, coeff)| ScaledMonomial { coeff, mono: Monomial { lambda, r: self.r } })
            .collect())
    }

    /// Action on a linear combination of monomials, merged and sorted.
    pub fn apply_to_combination(&self, v: &[ScaledMonomial]) -> Result<Vec<ScaledMonomial>> {
        let mut out: BTreeMap<Monomial, BigRational> = BTreeMap::new();
        for sm in v.iter().filter(|x| !x.is_zero()) {
            for t in self.apply(&sm.mono)? {
                *out.entry(t.mono).or_insert_with(BigRational::zero) += t.coeff * &sm.coeff;
            }
        }
        Ok(out
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(mono, coeff)| ScaledMonomial { coeff, mono })
            .collect())
    }

    /// Every degree lies in the kernel of `L`.
    pub fn is_invariant(&self, a: &TorusAction) -> bool {
        a.n() == self.n()
            && self.terms.keys().all(|alpha| a.matrix().mul_i64(alpha).is_ok_and(|v| v.iter().all(Zero::is_zero)))
    }

    /// Image under the partial Fourier transform `sigma_I` (`Q_i -> -P_i`,
    /// `P_i -> Q_i` for `i in I`).
    ///
    /// `sigma_I(Pi_i) = -Pi_i - 1` and `sigma_I(u_alpha) = sign * u_{alpha^I}`
    /// with `sign = prod_{i in I, alpha_i > 0} (-1)^{alpha_i}`.
    pub fn fourier_transform(&self, flip: &[usize]) -> Result<OperatorElement> {
        let n = self.n();
        let mut in_flip = vec![false; n];
        for &i in flip {
            if i >= self.r {
                return Err(Error::IndexOutOfRange { index: i, bound: self.r });
            }
            in_flip[i] = true;
        }
        let maps: Vec<(BigRational, BigRational)> = (0..n)
            .map(|i| {
                if in_flip[i] {
                    (-BigRational::one(), -BigRational::one())
                } else {
                    (BigRational::one(), BigRational::zero())
                }
            })
            .collect();
        let mut out = Self::zero(self.r, self.s);
        for (alpha, c) in &self.terms {
            let mut degree = alpha.clone();
            let mut negative = false;
            for i in 0..n {
                if in_flip[i] {
                    if alpha[i] > 0 && alpha[i] % 2 == 1 {
                        negative = !negative;
                    }
                    degree[i] = -alpha[i];
                }
            }
            let mut image = c.substitute_affine(&maps);
            if negative {
                image = -&image;
            }
            out.add_term(degree, image);
        }
        Ok(out)
    }

    /// Action on `O(Y)^I`: `a . m = sigma_I(a) m`.
    pub fn twisted_apply(&self, flip: &[usize], m: &Monomial) -> Result<Vec<ScaledMonomial>> {
        self.fourier_transform(flip)?.apply(m)
    }

    /// The same operator viewed on `k^r x (k^x)^{s + extra}`.
    pub fn embed(&self, extra: usize) -> OperatorElement {
        let n = self.n() + extra;
        let mut out = Self::zero(self.r, self.s + extra);
        for (alpha, c) in &self.terms {
            let mut a = alpha.clone();
            a.resize(n, 0);
            let terms = c.terms().map(|(e, x)| {
                let mut e = e.clone();
                e.resize(n, 0);
                (e, x.clone())
            });
            out.add_term(a, PiPoly::from_terms(n, terms));
        }
        out
    }
}

/// `u_alpha u_beta = F(Pi) u_{alpha + beta}`: returns `F` and the degree.
fn degree_product(r: usize, n: usize, alpha: &[i64], beta: &[i64]) -> (PiPoly, Vec<i64>) {
    let mut f = PiPoly::one(n);
    for i in 0..r {
        let fi = coordinate_product(n, i, alpha[i], beta[i]);
        if !fi.is_one() {
            f = &f * &fi;
        }
    }
    let gamma = alpha.iter().zip(beta).map(|(a, b)| a + b).collect();
    (f, gamma)
}

/// Merges `u_a u_b` at an affine coordinate `i` by single steps
/// `u_k Q = u_{k+1}` or `(Pi - k) u_{k+1}`, and `u_k P = u_{k-1}` or
/// `(Pi - k + 1) u_{k-1}`.
fn coordinate_product(n: usize, i: usize, a: i64, b: i64) -> PiPoly {
    let mut f = PiPoly::one(n);
    let mut k = a;
    let shifted = |c: i64| PiPoly::affine(n, i, BigRational::one(), BigRational::from_integer(BigInt::from(c)));
    if b > 0 {
        for _ in 0..b {
            if k < 0 {
                f = &f * &shifted(-k);
            }
            k += 1;
        }
    } else {
        for _ in 0..(-b) {
            if k > 0 {
                f = &f * &shifted(-(k - 1));
            }
            k -= 1;
        }
    }
    f
}

/// `u_alpha` with coefficient one.
pub fn u_op(r: usize, s: usize, alpha: &[i64]) -> OperatorElement {
    OperatorElement::term(r, s, alpha.to_vec(), PiPoly::one(r + s))
}

fn unit(n: usize, i: usize, v: i64) -> Vec<i64> {
    let mut e = vec![0; n];
    e[i] = v;
    e
}

pub fn pi_op(r: usize, s: usize, i: usize) -> OperatorElement {
    OperatorElement::term(r, s, vec![0; r + s], PiPoly::var(r + s, i))
}

pub fn q_op(r: usize, s: usize, i: usize) -> OperatorElement {
    u_op(r, s, &unit(r + s, i, 1))
}

/// `P_i = d/dQ_i`; at a torus coordinate this is `Q_i^{-1} Pi_i =
/// (Pi_i + 1) u_{-e_i}`.
pub fn p_op(r: usize, s: usize, i: usize) -> OperatorElement {
    let n = r + s;
    if i < r {
        u_op(r, s, &unit(n, i, -1))
    } else {
        let c = PiPoly::affine(n, i, BigRational::one(), BigRational::one());
        OperatorElement::term(r, s, unit(n, i, -1), c)
    }
}

impl std::ops::Mul for &OperatorElement {
    type Output = OperatorElement;

    /// Panics when the shapes differ; use [`OperatorElement::multiply`] to
    /// get an error instead.
    fn mul(self, other: &OperatorElement) -> OperatorElement {
        self.multiply(other).expect("operators of the same shape")
    }
}

impl std::ops::Add for &OperatorElement {
    type Output = OperatorElement;

    fn add(self, other: &OperatorElement) -> OperatorElement {
        OperatorElement::add(self, other).expect("operators of the same shape")
    }
}

impl std::ops::Sub for &OperatorElement {
    type Output = OperatorElement;

    fn sub(self, other: &OperatorElement) -> OperatorElement {
        OperatorElement::sub(self, other).expect("operators of the same shape")
    }
}

impl fmt::Display for OperatorElement {
    /// Text syntax, indices one-based: `3/2 * Pi(1)^2 * u[1,-1] - u[0,0]`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (alpha, c) in &self.terms {
            let degree = alpha.iter().map(i64::to_string).collect::<Vec<_>>().join(",");
            for (neg, body) in c.signed_terms() {
                let sign = match (first, neg) {
                    (true, true) => "-",
                    (true, false) => "",
                    (false, true) => " - ",
                    (false, false) => " + ",
                };
                write!(f, "{sign}{body} * u[{degree}]")?;
                first = false;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for OperatorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "OperatorElement(r={}, s={}: {self})", self.r, self.s)
    }
}

#[derive(Serialize, Deserialize)]
struct WireTerm {
    degree: Vec<i64>,
    coefficient: Vec<WireMonomial>,
}

#[derive(Serialize, Deserialize)]
struct WireMonomial {
    exponents: Vec<u32>,
    coeff: String,
}

#[derive(Serialize, Deserialize)]
struct WireOperator {
    r: usize,
    s: usize,
    text: String,
    terms: Vec<WireTerm>,
}

impl Serialize for OperatorElement {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        let terms = self
            .terms
            .iter()
            .map(|(a, c)| WireTerm {
                degree: a.clone(),
                coefficient: c
                    .terms()
                    .map(|(e, x)| WireMonomial { exponents: e.clone(), coeff: format_rational(x) })
                    .collect(),
            })
            .collect();
        WireOperator { r: self.r, s: self.s, text: self.to_string(), terms }.serialize(ser)
    }
}

impl<'de> Deserialize<'de> for OperatorElement {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let w = WireOperator::deserialize(de)?;
        let n = w.r + w.s;
        let mut op = OperatorElement::zero(w.r, w.s);
        for t in w.terms {
            if t.degree.len() != n {
                return Err(D::Error::custom("degree of wrong length"));
            }
            let mut terms = Vec::new();
            for m in t.coefficient {
                if m.exponents.len() != n {
                    return Err(D::Error::custom("exponent vector of wrong length"));
                }
                terms.push((m.exponents, parse_rational(&m.coeff).map_err(D::Error::custom)?));
            }
            op.add_term(t.degree, PiPoly::from_terms(n, terms));
        }
        Ok(op)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(x: i64) -> BigRational {
        BigRational::from_integer(x.into())
    }

    fn mono(l: &[i64], r: usize) -> Monomial {
        Monomial::new(l.to_vec(), r).unwrap()
    }

    #[test]
    fn monomials_are_validated() {
        assert!(Monomial::new(vec![0, -1], 1).is_ok());
        assert!(matches!(Monomial::new(vec![-1, 0], 1), Err(Error::InvalidMonomial(_))));
    }

    #[test]
    fn u_of_zero_is_identity() {
        assert_eq!(u_op(2, 1, &[0, 0, 0]), OperatorElement::identity(2, 1));
        let x = &q_op(2, 0, 0) + &pi_op(2, 0, 1);
        assert_eq!(&x * &OperatorElement::identity(2, 0), x);
        assert_eq!(&OperatorElement::identity(2, 0) * &x, x);
    }

    #[test]
    fn q_then_p_products() {
        let (qq, pp) = (q_op(1, 0, 0), p_op(1, 0, 0));
        assert_eq!(&qq * &pp, pi_op(1, 0, 0));
        let expected = &pi_op(1, 0, 0) + &OperatorElement::identity(1, 0);
        assert_eq!(&pp * &qq, expected);
        assert_eq!(u_op(2, 0, &[1, -1]), &q_op(2, 0, 0) * &p_op(2, 0, 1));
    }

    #[test]
    fn torus_derivative() {
        // P Q = Pi + 1 also at a punctured coordinate, and Q Q^{-1} = 1.
        let (qq, pp) = (q_op(0, 1, 0), p_op(0, 1, 0));
        assert_eq!(&pp * &qq, &pi_op(0, 1, 0) + &OperatorElement::identity(0, 1));
        assert_eq!(&qq * &pp, pi_op(0, 1, 0));
        assert_eq!(&u_op(0, 1, &[1]) * &u_op(0, 1, &[-1]), OperatorElement::identity(0, 1));
        let out = pp.apply(&mono(&[-2], 0)).unwrap();
        assert_eq!(out, vec![ScaledMonomial::new(q(-2), mono(&[-3], 0))]);
    }

    #[test]
    fn applications() {
        let p1 = p_op(1, 0, 0);
        assert_eq!(p1.apply(&mono(&[3], 1)).unwrap(), vec![ScaledMonomial::new(q(3), mono(&[2], 1))]);
        assert!(p1.apply(&mono(&[0], 1)).unwrap().is_empty());
        let u = u_op(2, 0, &[1, -1]);
        assert_eq!(u.apply(&mono(&[0, 3], 2)).unwrap(), vec![ScaledMonomial::new(q(3), mono(&[1, 2], 2))]);
        // Pi acts by its eigenvalue.
        assert_eq!(pi_op(2, 0, 1).apply(&mono(&[4, 5], 2)).unwrap()[0].coeff, q(5));
    }

    #[test]
    fn commutation_with_pi() {
        let u = u_op(2, 1, &[2, -3, 1]);
        for i in 0..3 {
            let c = pi_op(2, 1, i).commutator(&u).unwrap();
            assert_eq!(c, u.scale(&q([2, -3, 1][i])));
        }
    }

    #[test]
    fn invariance() {
        let a = TorusAction::from_rows(&[vec![1, -1]], 2, 0).unwrap();
        assert!(pi_op(2, 0, 0).is_invariant(&a));
        assert!(u_op(2, 0, &[1, 1]).is_invariant(&a));
        assert!(!u_op(2, 0, &[1, 0]).is_invariant(&a));
    }

    #[test]
    fn fourier_examples() {
        let t = u_op(2, 0, &[1, 1]).fourier_transform(&[1]).unwrap();
        assert_eq!(t, u_op(2, 0, &[1, -1]).scale(&q(-1)));
        let pi = pi_op(2, 0, 0).fourier_transform(&[0]).unwrap();
        assert_eq!(pi, (&pi_op(2, 0, 0) + &OperatorElement::identity(2, 0)).scale(&q(-1)));
        let x = &u_op(2, 0, &[2, -1]) + &pi_op(2, 0, 1);
        assert_eq!(x.fourier_transform(&[]).unwrap(), x);
        assert!(matches!(x.fourier_transform(&[2]), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn fourier_matches_generator_images() {
        // sigma(Q_1^2 P_2) computed from sigma(Q_1) = -P_1 and sigma(P_2) = Q_2.
        let x = &(&q_op(2, 0, 0) * &q_op(2, 0, 0)) * &p_op(2, 0, 1);
        let img = &(&p_op(2, 0, 0) * &p_op(2, 0, 0)) * &q_op(2, 0, 1);
        assert_eq!(x.fourier_transform(&[0, 1]).unwrap(), img);
    }

    #[test]
    fn twisted_examples() {
        let one = Monomial::one(1, 0);
        assert!(q_op(1, 0, 0).twisted_apply(&[0], &one).unwrap().is_empty());
        let one2 = Monomial::one(2, 0);
        assert!(u_op(2, 0, &[1, 1]).twisted_apply(&[1], &one2).unwrap().is_empty());
        let m = mono(&[1, 2], 2);
        let x = u_op(2, 0, &[1, -1]);
        assert_eq!(x.twisted_apply(&[], &m).unwrap(), x.apply(&m).unwrap());
    }

    #[test]
    fn display_text() {
        let x = &u_op(2, 0, &[1, -1]).scale(&BigRational::new(3.into(), 2.into())) - &pi_op(2, 0, 0);
        assert_eq!(x.to_string(), "-1 * Pi(1) * u[0,0] + 3/2 * u[1,-1]");
        assert_eq!(OperatorElement::zero(1, 0).to_string(), "0");
    }

    #[test]
    fn serde_round_trip() {
        let x = &u_op(1, 1, &[1, -2]).scale(&BigRational::new(3.into(), 2.into())) - &pi_op(1, 1, 1);
        let text = serde_json::to_string(&x).unwrap();
        let back: OperatorElement = serde_json::from_str(&text).unwrap();
        assert_eq!(back, x);
    }
}
