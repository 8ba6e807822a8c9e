//! Text syntax for operators.
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := factor ('*' factor)*
//! factor := atom ['^' k]
//! atom   := rational | 'Pi(' i ')' | 'Q(' i ')' | 'P(' i ')'
//!         | 'u[' a1 ',' ... ',' an ']' | '(' expr ')'
//! ```
//!
//! Indices are one-based, rationals are written `p` or `p/q`, and factors
//! are multiplied left to right in the operator algebra. `Q(i)^-k` denotes
//! `u_{-k e_i}` at a punctured coordinate `i`.

use num_bigint::BigInt;
use num_rational::BigRational;

use super::operator::{p_op, pi_op, q_op, u_op, OperatorElement};
use crate::error::{Error, Result};

pub fn parse_operator(text: &str, r: usize, s: usize) -> Result<OperatorElement> {
    let mut p = Parser { src: text.as_bytes(), pos: 0, r, s };
    let op = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(op)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    r: usize,
    s: usize,
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> Error {
        Error::Parse(format!("{msg} at offset {}", self.pos))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(&format!("expected '{}'", c as char)))
        }
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        if matches!(self.src.get(self.pos), Some(b'-' | b'+')) {
            self.pos += 1;
        }
        let digits = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == digits {
            return Err(self.error("expected an integer"));
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
        text.parse().map_err(|_| self.error("invalid integer"))
    }

    fn small(&mut self) -> Result<i64> {
        let v = self.integer()?;
        i64::try_from(v).map_err(|_| self.error("integer out of range"))
    }

    fn index(&mut self) -> Result<usize> {
        self.expect(b'(')?;
        let i = self.small()?;
        self.expect(b')')?;
        let n = self.r + self.s;
        if i < 1 || i as usize > n {
            return Err(self.error(&format!("index {i} outside 1..={n}")));
        }
        Ok(i as usize - 1)
    }

    fn keyword(&mut self, word: &str) -> bool {
        self.skip_ws();
        let w = word.as_bytes();
        if self.src[self.pos..].starts_with(w) {
            self.pos += w.len();
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<OperatorElement> {
        let mut negate = false;
        if self.eat(b'-') {
            negate = true;
        } else {
            self.eat(b'+');
        }
        let mut acc = self.term()?;
        if negate {
            acc = acc.scale(&-BigRational::from_integer(1.into()));
        }
        loop {
            if self.eat(b'+') {
                acc = acc.add(&self.term()?)?;
            } else if self.eat(b'-') {
                acc = acc.sub(&self.term()?)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<OperatorElement> {
        let mut acc = self.factor()?;
        while self.eat(b'*') {
            acc = acc.multiply(&self.factor()?)?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<OperatorElement> {
        let n = self.r + self.s;
        let (r, s) = (self.r, self.s);
        let c = self.peek().ok_or_else(|| self.error("unexpected end of input"))?;
        let (atom, coordinate) = if c.is_ascii_digit() {
            let num = self.integer()?;
            let den = if self.eat(b'/') { self.integer()? } else { BigInt::from(1) };
            if den == BigInt::from(0) {
                return Err(self.error("zero denominator"));
            }
            (OperatorElement::constant(r, s, BigRational::new(num, den)), None)
        } else if self.eat(b'(') {
            let inner = self.expr()?;
            self.expect(b')')?;
            (inner, None)
        } else if self.keyword("Pi") {
            (pi_op(r, s, self.index()?), None)
        } else if self.keyword("Q") {
            let i = self.index()?;
            (q_op(r, s, i), Some(i))
        } else if self.keyword("P") {
            (p_op(r, s, self.index()?), None)
        } else if self.keyword("u") {
            self.expect(b'[')?;
            let mut alpha = Vec::with_capacity(n);
            if !self.eat(b']') {
                loop {
                    alpha.push(self.small()?);
                    if self.eat(b']') {
                        break;
                    }
                    self.expect(b',')?;
                }
            }
            if alpha.len() != n {
                return Err(self.error(&format!("u[...] needs {n} entries, found {}", alpha.len())));
            }
            (u_op(r, s, &alpha), None)
        } else {
            return Err(self.error(&format!("unexpected character '{}'", c as char)));
        };
        if !self.eat(b'^') {
            return Ok(atom);
        }
        let k = self.small()?;
        if k >= 0 {
            return Ok(atom.pow(k as u32));
        }
        match coordinate {
            Some(i) if i >= r => {
                let mut alpha = vec![0; n];
                alpha[i] = k;
                Ok(u_op(r, s, &alpha))
            }
            _ => Err(self.error("negative powers are only allowed for Q(i) at punctured coordinates")),
        }
    }
}
