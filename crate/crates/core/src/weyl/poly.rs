use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::serde_big::format_rational;

/// A polynomial in the commuting Euler operators `Pi_0, ..., Pi_{n-1}` with
/// rational coefficients. Keys are exponent vectors; zero coefficients are
/// never stored.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PiPoly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, BigRational>,
}

impl PiPoly {
    pub fn zero(nvars: usize) -> Self {
        PiPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: BigRational) -> Self {
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, BigRational::one())
    }

    /// `Pi_i`
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        let mut p = Self::zero(nvars);
        p.terms.insert(e, BigRational::one());
        p
    }

    /// `a * Pi_i + b`
    pub fn affine(nvars: usize, i: usize, a: BigRational, b: BigRational) -> Self {
        &Self::var(nvars, i).scale(&a) + &Self::constant(nvars, b)
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Vec<u32>, BigRational)>) -> Self {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars, "exponent vector of wrong length");
            p.add_term(e, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&vec![0; self.nvars]).is_some_and(One::is_one)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &BigRational)> {
        self.terms.iter()
    }

    /// The constant term.
    pub fn constant_term(&self) -> BigRational {
        self.terms.get(&vec![0; self.nvars]).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Indices of the variables that occur.
    pub fn support(&self) -> Vec<usize> {
        (0..self.nvars).filter(|&i| self.terms.keys().any(|e| e[i] > 0)).collect()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    fn add_term(&mut self, e: Vec<u32>, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        PiPoly { nvars: self.nvars, terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect() }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::one(self.nvars);
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    /// Substitutes `Pi_i -> a_i Pi_i + b_i` simultaneously for all `i`.
    pub fn substitute_affine(&self, maps: &[(BigRational, BigRational)]) -> Self {
        assert_eq!(maps.len(), self.nvars);
        let images: Vec<PiPoly> = maps
            .iter()
            .enumerate()
            .map(|(i, (a, b))| Self::affine(self.nvars, i, a.clone(), b.clone()))
            .collect();
        let mut cache: BTreeMap<(usize, u32), PiPoly> = BTreeMap::new();
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            let mut term = Self::constant(self.nvars, c.clone());
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    let power = cache.entry((i, k)).or_insert_with(|| images[i].pow(k));
                    term = &term * &*power;
                }
            }
            out = &out + &term;
        }
        out
    }

    /// `c(Pi) -> c(Pi + shift)`
    pub fn shift(&self, shift: &[i64]) -> Self {
        if shift.iter().all(|&x| x == 0) {
            return self.clone();
        }
        let maps: Vec<_> = shift
            .iter()
            .map(|&x| (BigRational::one(), BigRational::from_integer(BigInt::from(x))))
            .collect();
        self.substitute_affine(&maps)
    }

    pub fn eval(&self, at: &[BigInt]) -> BigRational {
        assert_eq!(at.len(), self.nvars);
        let mut total = BigRational::zero();
        for (e, c) in &self.terms {
            let mut v = BigInt::one();
            for (x, &k) in at.iter().zip(e) {
                if k > 0 {
                    v *= num_traits::pow(x.clone(), k as usize);
                }
            }
            total += c * BigRational::from_integer(v);
        }
        total
    }

    /// Writes the polynomial with one-based variable names, e.g.
    /// `2 * Pi(1)^2 * Pi(3)`. Each entry is a signed monomial term.
    pub(crate) fn signed_terms(&self) -> Vec<(bool, String)> {
        self.terms
            .iter()
            .rev()
            .map(|(e, c)| {
                let mut parts = vec![format_rational(&c.abs())];
                for (i, &k) in e.iter().enumerate() {
                    match k {
                        0 => {}
                        1 => parts.push(format!("Pi({})", i + 1)),
                        _ => parts.push(format!("Pi({})^{k}", i + 1)),
                    }
                }
                (c.is_negative(), parts.join(" * "))
            })
            .collect()
    }
}

impl std::ops::Add for &PiPoly {
    type Output = PiPoly;
    fn add(self, other: &PiPoly) -> PiPoly {
        assert_eq!(self.nvars, other.nvars);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl std::ops::Sub for &PiPoly {
    type Output = PiPoly;
    fn sub(self, other: &PiPoly) -> PiPoly {
        assert_eq!(self.nvars, other.nvars);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c.clone());
        }
        out
    }
}

impl std::ops::Neg for &PiPoly {
    type Output = PiPoly;
    fn neg(self) -> PiPoly {
        self.scale(&-BigRational::one())
    }
}

impl std::ops::Mul for &PiPoly {
    type Output = PiPoly;
    fn mul(self, other: &PiPoly) -> PiPoly {
        assert_eq!(self.nvars, other.nvars);
        let mut out = PiPoly::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }
}

impl fmt::Display for PiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.signed_terms();
        if terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (neg, body)) in terms.iter().enumerate() {
            match (k, neg) {
                (0, true) => write!(f, "-{body}")?,
                (0, false) => write!(f, "{body}")?,
                (_, true) => write!(f, " - {body}")?,
                (_, false) => write!(f, " + {body}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for PiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PiPoly({self})")
    }
}
