//! Laurent polynomials in the chart coordinate `z` with exact rational
//! coefficients.
//!
//! Canonical printed form lists terms by ascending exponent, e.g.
//! `3/2*z^-1 + 1 - z^2`. The parser accepts any order and merges repeated
//! exponents, so printing a parsed polynomial yields the canonical form.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use super::rat::Rat;

/// Exponents beyond this magnitude are rejected as overflow.
pub const MAX_EXPONENT: i64 = 1 << 40;

fn checked_exp(e: Option<i64>) -> i64 {
    match e {
        Some(v) if v.abs() <= MAX_EXPONENT => v,
        _ => panic!("Laurent exponent overflow"),
    }
}

/// A finite sum `Σ c_k z^k`, `k ∈ ℤ`, storing only nonzero coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    coeffs: BTreeMap<i64, Rat>,
}

impl LaurentPoly {
    pub fn zero() -> LaurentPoly {
        LaurentPoly::default()
    }

    pub fn one() -> LaurentPoly {
        LaurentPoly::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> LaurentPoly {
        LaurentPoly::monomial(c, 0)
    }

    pub fn from_int(c: i64) -> LaurentPoly {
        LaurentPoly::constant(Rat::from_int(c))
    }

    /// `c·z^k`.
    pub fn monomial(c: Rat, k: i64) -> LaurentPoly {
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(checked_exp(Some(k)), c);
        }
        LaurentPoly { coeffs }
    }

    /// `z^k`.
    pub fn z_pow(k: i64) -> LaurentPoly {
        LaurentPoly::monomial(Rat::one(), k)
    }

    /// Builds from `(exponent, coefficient)` pairs; repeated exponents add up.
    pub fn from_terms<I>(terms: I) -> LaurentPoly
    where
        I: IntoIterator<Item = (i64, Rat)>,
    {
        let mut p = LaurentPoly::zero();
        for (k, c) in terms {
            p.add_term(k, &c);
        }
        p
    }

    fn add_term(&mut self, k: i64, c: &Rat) {
        if c.is_zero() {
            return;
        }
        let k = checked_exp(Some(k));
        let entry = self.coeffs.entry(k).or_insert_with(Rat::zero);
        *entry += c;
        if entry.is_zero() {
            self.coeffs.remove(&k);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeff(0).is_one()
    }

    pub fn coeff(&self, k: i64) -> Rat {
        self.coeffs.get(&k).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &Rat)> + '_ {
        self.coeffs.iter().map(|(k, c)| (*k, c))
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    /// Holomorphic on the chart `z ≠ ∞`: no negative exponents.
    pub fn is_poly_in_z(&self) -> bool {
        self.min_exp().is_none_or(|k| k >= 0)
    }

    /// Holomorphic on the chart `w = 1/z`: no positive exponents.
    pub fn is_poly_in_w(&self) -> bool {
        self.max_exp().is_none_or(|k| k <= 0)
    }

    /// A constant (possibly zero).
    pub fn is_constant(&self) -> bool {
        self.is_poly_in_z() && self.is_poly_in_w()
    }

    /// `Some((c, k))` when the polynomial is `c·z^k` with `c ≠ 0`.
    pub fn as_monomial(&self) -> Option<(Rat, i64)> {
        if self.coeffs.len() == 1 {
            let (k, c) = self.coeffs.iter().next().unwrap();
            Some((c.clone(), *k))
        } else {
            None
        }
    }

    pub fn scale(&self, c: &Rat) -> LaurentPoly {
        if c.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(k, v)| (*k, v * c)).collect(),
        }
    }

    /// Multiplication by `z^s`.
    pub fn shift(&self, s: i64) -> LaurentPoly {
        LaurentPoly {
            coeffs: self
                .coeffs
                .iter()
                .map(|(k, v)| (checked_exp(k.checked_add(s)), v.clone()))
                .collect(),
        }
    }

    /// Formal `d/dz`.
    pub fn derivative(&self) -> LaurentPoly {
        LaurentPoly::from_terms(
            self.coeffs
                .iter()
                .filter(|(k, _)| **k != 0)
                .map(|(k, c)| (k - 1, c * &Rat::from_int(*k))),
        )
    }

    /// Evaluation at a nonzero rational point.
    pub fn eval(&self, at: &Rat) -> Rat {
        assert!(!at.is_zero() || self.is_poly_in_z(), "evaluation of z^-k at 0");
        self.coeffs
            .iter()
            .map(|(k, c)| c * &at.pow(*k as i32))
            .sum()
    }

    /// Keeps only the terms whose exponent satisfies `keep`.
    pub fn filter_exponents(&self, keep: impl Fn(i64) -> bool) -> LaurentPoly {
        LaurentPoly {
            coeffs: self
                .coeffs
                .iter()
                .filter(|(k, _)| keep(**k))
                .map(|(k, c)| (*k, c.clone()))
                .collect(),
        }
    }

    /// Exact quotient by a nonzero monomial `c·z^k`.
    pub fn div_monomial(&self, c: &Rat, k: i64) -> LaurentPoly {
        let inv = c.recip().expect("division by zero monomial");
        self.scale(&inv).shift(-k)
    }
}

impl Add<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (k, c) in &rhs.coeffs {
            out.add_term(*k, c);
        }
        out
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: LaurentPoly) -> LaurentPoly {
        &self + &rhs
    }
}

impl Sub<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (k, c) in &rhs.coeffs {
            out.add_term(*k, &-c);
        }
        out
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: LaurentPoly) -> LaurentPoly {
        &self - &rhs
    }
}

impl Mul<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (a, ca) in &self.coeffs {
            for (b, cb) in &rhs.coeffs {
                out.add_term(checked_exp(a.checked_add(*b)), &(ca * cb));
            }
        }
        out
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(k, c)| (*k, -c)).collect(),
        }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl From<Rat> for LaurentPoly {
    fn from(c: Rat) -> LaurentPoly {
        LaurentPoly::constant(c)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (k, c)) in self.coeffs.iter().enumerate() {
            let mag = c.abs();
            match (i, c.is_negative()) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            match *k {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}*")?;
                    }
                    if *k == 1 {
                        f.write_str("z")?;
                    } else {
                        write!(f, "z^{k}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LaurentParseError {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("zero denominator at position {pos}")]
    ZeroDenominator { pos: usize },
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn err(&self, msg: impl Into<String>) -> LaurentParseError {
        LaurentParseError::Syntax {
            pos: self.pos,
            msg: msg.into(),
        }
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn digits(&mut self) -> Option<&'a str> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        (self.pos > start).then(|| std::str::from_utf8(&self.src[start..self.pos]).unwrap())
    }

    fn coefficient(&mut self) -> Result<Option<Rat>, LaurentParseError> {
        let Some(n) = self.digits() else {
            return Ok(None);
        };
        let n: Rat = n.parse().map_err(|_| self.err("bad integer"))?;
        if self.eat(b'/') {
            let dpos = self.pos;
            let d = self.digits().ok_or_else(|| self.err("expected denominator"))?;
            let d: Rat = d.parse().map_err(|_| self.err("bad integer"))?;
            if d.is_zero() {
                return Err(LaurentParseError::ZeroDenominator { pos: dpos });
            }
            return Ok(Some(n / d));
        }
        Ok(Some(n))
    }

    fn exponent(&mut self) -> Result<i64, LaurentParseError> {
        if !self.eat(b'^') {
            return Ok(1);
        }
        let neg = if self.eat(b'-') {
            true
        } else {
            self.eat(b'+');
            false
        };
        let d = self.digits().ok_or_else(|| self.err("expected exponent"))?;
        let v: i64 = d.parse().map_err(|_| self.err("exponent overflow"))?;
        if v > MAX_EXPONENT {
            return Err(self.err("exponent overflow"));
        }
        Ok(if neg { -v } else { v })
    }

    fn term(&mut self) -> Result<(i64, Rat), LaurentParseError> {
        let coeff = self.coefficient()?;
        let has_z = match coeff {
            Some(_) => {
                if self.eat(b'*') {
                    if self.peek() != Some(b'z') {
                        return Err(self.err("expected `z` after `*`"));
                    }
                    true
                } else {
                    self.peek() == Some(b'z')
                }
            }
            None => {
                if self.peek() != Some(b'z') {
                    return Err(self.err("expected coefficient or `z`"));
                }
                true
            }
        };
        let c = coeff.unwrap_or_else(Rat::one);
        if has_z {
            self.pos += 1;
            Ok((self.exponent()?, c))
        } else {
            Ok((0, c))
        }
    }

    fn poly(&mut self) -> Result<LaurentPoly, LaurentParseError> {
        let mut out = LaurentPoly::zero();
        let mut first = true;
        loop {
            let sign = match self.peek() {
                None if first => return Err(self.err("empty input")),
                None => break,
                Some(b'+') => {
                    self.pos += 1;
                    Rat::one()
                }
                Some(b'-') => {
                    self.pos += 1;
                    -Rat::one()
                }
                Some(_) if first => Rat::one(),
                Some(_) => return Err(self.err("expected `+` or `-`")),
            };
            let (k, c) = self.term()?;
            out.add_term(k, &(c * sign));
            first = false;
        }
        Ok(out)
    }
}

impl FromStr for LaurentPoly {
    type Err = LaurentParseError;

    fn from_str(s: &str) -> Result<LaurentPoly, LaurentParseError> {
        Parser {
            src: s.as_bytes(),
            pos: 0,
        }
        .poly()
    }
}

/// Parses the textual grammar `c*z^k`, `c`, `z^k`, `z` joined by signs.
pub fn laurent_parse(text: &str) -> Result<LaurentPoly, LaurentParseError> {
    text.parse()
}

pub fn laurent_derivative(p: &LaurentPoly) -> LaurentPoly {
    p.derivative()
}

impl serde::Serialize for LaurentPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for LaurentPoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<LaurentPoly, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
