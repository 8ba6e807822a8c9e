//! Serde adapters for arbitrary-precision values.
//!
//! Integers are written as JSON numbers when they fit in an `i64` and as
//! decimal strings otherwise. Rationals are always written as strings
//! (`"p/q"`, or `"p"` when the denominator is one). Use as
//! `#[serde(with = "crate::serde_big")]` on any field whose type implements
//! [`BigRepr`].

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use serde::{de, Deserialize, Deserializer, Serialize, Serializer};

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Rendered {
    Null,
    Num(i64),
    Str(String),
    List(Vec<Rendered>),
}

pub trait BigRepr: Sized {
    fn render(&self) -> Rendered;
    fn parse(r: Rendered) -> Result<Self, String>;
}

impl BigRepr for BigInt {
    fn render(&self) -> Rendered {
        match self.to_i64() {
            Some(v) => Rendered::Num(v),
            None => Rendered::Str(self.to_string()),
        }
    }

    fn parse(r: Rendered) -> Result<Self, String> {
        match r {
            Rendered::Num(v) => Ok(BigInt::from(v)),
            Rendered::Str(s) => s.trim().parse().map_err(|_| format!("invalid integer {s:?}")),
            other => Err(format!("expected integer, found {other:?}")),
        }
    }
}

impl BigRepr for BigRational {
    fn render(&self) -> Rendered {
        Rendered::Str(format_rational(self))
    }

    fn parse(r: Rendered) -> Result<Self, String> {
        match r {
            Rendered::Num(v) => Ok(BigRational::from_integer(BigInt::from(v))),
            Rendered::Str(s) => parse_rational(&s),
            other => Err(format!("expected rational, found {other:?}")),
        }
    }
}

impl<T: BigRepr> BigRepr for Vec<T> {
    fn render(&self) -> Rendered {
        Rendered::List(self.iter().map(BigRepr::render).collect())
    }

    fn parse(r: Rendered) -> Result<Self, String> {
        match r {
            Rendered::List(items) => items.into_iter().map(T::parse).collect(),
            other => Err(format!("expected list, found {other:?}")),
        }
    }
}

impl<T: BigRepr> BigRepr for Option<T> {
    fn render(&self) -> Rendered {
        match self {
            Some(v) => v.render(),
            None => Rendered::Null,
        }
    }

    fn parse(r: Rendered) -> Result<Self, String> {
        match r {
            Rendered::Null => Ok(None),
            other => T::parse(other).map(Some),
        }
    }
}

pub fn serialize<T: BigRepr, S: Serializer>(value: &T, serializer: S) -> Result<S::Ok, S::Error> {
    value.render().serialize(serializer)
}

pub fn deserialize<'de, T: BigRepr, D: Deserializer<'de>>(deserializer: D) -> Result<T, D::Error> {
    let rendered = Rendered::deserialize(deserializer)?;
    T::parse(rendered).map_err(de::Error::custom)
}

/// `p/q` in lowest terms, or `p` for integers.
pub fn format_rational(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn parse_rational(s: &str) -> Result<BigRational, String> {
    let s = s.trim();
    let bad = || format!("invalid rational {s:?}");
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q == BigInt::from(0) {
                return Err(format!("zero denominator in {s:?}"));
            }
            Ok(BigRational::new(p, q))
        }
        None => s.parse::<BigInt>().map(BigRational::from_integer).map_err(|_| bad()),
    }
}
