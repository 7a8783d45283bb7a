//! Sparse bivariate polynomials in the color variables `a` (cubes) and `b`
//! (bricks) with arbitrary-precision rational coefficients.
//!
//! Every count produced by this crate is a [`Poly2`]. Integer sequences are
//! obtained by specializing with [`Poly2::eval`].

use std::collections::BTreeMap;
use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::ParsePolyError;

/// Exponent pair `(deg_a, deg_b)`.
pub type Exponent = (u32, u32);

/// Exact polynomial in `a` and `b`, stored as a map from exponent pairs to
/// nonzero rational coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly2 {
    terms: BTreeMap<Exponent, BigRational>,
}

impl Poly2 {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    /// The cube color variable.
    pub fn a() -> Self {
        Self::monomial(1, 1, 0)
    }

    /// The brick color variable.
    pub fn b() -> Self {
        Self::monomial(1, 0, 1)
    }

    pub fn constant(c: impl Into<BigRational>) -> Self {
        Self::term(c, 0, 0)
    }

    pub fn from_int(c: i64) -> Self {
        Self::constant(BigRational::from_integer(BigInt::from(c)))
    }

    /// `coeff * a^deg_a * b^deg_b` with an integer coefficient.
    pub fn monomial(coeff: i64, deg_a: u32, deg_b: u32) -> Self {
        Self::term(BigRational::from_integer(BigInt::from(coeff)), deg_a, deg_b)
    }

    pub fn term(coeff: impl Into<BigRational>, deg_a: u32, deg_b: u32) -> Self {
        let coeff = coeff.into();
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert((deg_a, deg_b), coeff);
        }
        Poly2 { terms }
    }

    /// Builds a polynomial from integer `(coeff, deg_a, deg_b)` triples,
    /// combining repeated exponents.
    pub fn from_int_terms(terms: &[(i64, u32, u32)]) -> Self {
        terms.iter().map(|&(c, i, j)| Self::monomial(c, i, j)).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&(0, 0)).is_some_and(|c| c.is_one())
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (Exponent, &BigRational)> + '_ {
        self.terms.iter().map(|(&e, c)| (e, c))
    }

    pub fn coeff(&self, deg_a: u32, deg_b: u32) -> BigRational {
        self.terms
            .get(&(deg_a, deg_b))
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn constant_term(&self) -> BigRational {
        self.coeff(0, 0)
    }

    pub fn degree_a(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.0).max()
    }

    pub fn degree_b(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.1).max()
    }

    /// True iff every coefficient has denominator 1.
    pub fn is_integer_poly(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    /// The value as an integer, if the polynomial is an integer constant.
    pub fn as_integer(&self) -> Option<BigInt> {
        match self.terms.len() {
            0 => Some(BigInt::zero()),
            1 => {
                let (&e, c) = self.terms.iter().next()?;
                (e == (0, 0) && c.is_integer()).then(|| c.to_integer())
            }
            _ => None,
        }
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        Poly2 {
            terms: self.terms.iter().map(|(&e, c)| (e, c * k)).collect(),
        }
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut result = Self::one();
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Exact value at `a = a_val`, `b = b_val`.
    pub fn eval(&self, a_val: &BigRational, b_val: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for (&(i, j), c) in &self.terms {
            acc += c * rational_pow(a_val, i) * rational_pow(b_val, j);
        }
        acc
    }

    /// Partial substitution: each bound variable is replaced by its value,
    /// unbound variables stay symbolic.
    pub fn substitute(&self, a_val: Option<&BigRational>, b_val: Option<&BigRational>) -> Self {
        let mut out = Self::zero();
        for (&(i, j), c) in &self.terms {
            let mut coeff = c.clone();
            let mut exp = (i, j);
            if let Some(x) = a_val {
                coeff *= rational_pow(x, i);
                exp.0 = 0;
            }
            if let Some(y) = b_val {
                coeff *= rational_pow(y, j);
                exp.1 = 0;
            }
            out.add_term(exp, coeff);
        }
        out
    }

    fn add_term(&mut self, exp: Exponent, coeff: BigRational) {
        if coeff.is_zero() {
            return;
        }
        let slot = self.terms.entry(exp).or_insert_with(BigRational::zero);
        *slot += coeff;
        if slot.is_zero() {
            self.terms.remove(&exp);
        }
    }
}

fn rational_pow(x: &BigRational, e: u32) -> BigRational {
    num_traits::pow::pow(x.clone(), e as usize)
}

impl<'a> Add<&'a Poly2> for &'a Poly2 {
    type Output = Poly2;
    fn add(self, rhs: &Poly2) -> Poly2 {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for Poly2 {
    type Output = Poly2;
    fn add(mut self, rhs: Poly2) -> Poly2 {
        self += &rhs;
        self
    }
}

impl AddAssign<&Poly2> for Poly2 {
    fn add_assign(&mut self, rhs: &Poly2) {
        for (&e, c) in &rhs.terms {
            self.add_term(e, c.clone());
        }
    }
}

impl AddAssign for Poly2 {
    fn add_assign(&mut self, rhs: Poly2) {
        for (e, c) in rhs.terms {
            self.add_term(e, c);
        }
    }
}

impl<'a> Sub<&'a Poly2> for &'a Poly2 {
    type Output = Poly2;
    fn sub(self, rhs: &Poly2) -> Poly2 {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for Poly2 {
    type Output = Poly2;
    fn sub(mut self, rhs: Poly2) -> Poly2 {
        self -= &rhs;
        self
    }
}

impl SubAssign<&Poly2> for Poly2 {
    fn sub_assign(&mut self, rhs: &Poly2) {
        for (&e, c) in &rhs.terms {
            self.add_term(e, -c.clone());
        }
    }
}

impl Neg for &Poly2 {
    type Output = Poly2;
    fn neg(self) -> Poly2 {
        Poly2 {
            terms: self.terms.iter().map(|(&e, c)| (e, -c.clone())).collect(),
        }
    }
}

impl Neg for Poly2 {
    type Output = Poly2;
    fn neg(self) -> Poly2 {
        -&self
    }
}

impl<'a> Mul<&'a Poly2> for &'a Poly2 {
    type Output = Poly2;
    fn mul(self, rhs: &Poly2) -> Poly2 {
        let mut out = Poly2::zero();
        for (&(i1, j1), c1) in &self.terms {
            for (&(i2, j2), c2) in &rhs.terms {
                out.add_term((i1 + i2, j1 + j2), c1 * c2);
            }
        }
        out
    }
}

impl Mul for Poly2 {
    type Output = Poly2;
    fn mul(self, rhs: Poly2) -> Poly2 {
        &self * &rhs
    }
}

impl Sum for Poly2 {
    fn sum<I: Iterator<Item = Poly2>>(iter: I) -> Poly2 {
        iter.fold(Poly2::zero(), |acc, p| acc + p)
    }
}

impl<'a> Sum<&'a Poly2> for Poly2 {
    fn sum<I: Iterator<Item = &'a Poly2>>(iter: I) -> Poly2 {
        iter.fold(Poly2::zero(), |mut acc, p| {
            acc += p;
            acc
        })
    }
}

impl Product for Poly2 {
    fn product<I: Iterator<Item = Poly2>>(iter: I) -> Poly2 {
        iter.fold(Poly2::one(), |acc, p| &acc * &p)
    }
}

impl From<i64> for Poly2 {
    fn from(c: i64) -> Self {
        Poly2::from_int(c)
    }
}

impl From<BigRational> for Poly2 {
    fn from(c: BigRational) -> Self {
        Poly2::constant(c)
    }
}

impl From<BigInt> for Poly2 {
    fn from(c: BigInt) -> Self {
        Poly2::constant(BigRational::from_integer(c))
    }
}

/// Canonical text: terms by descending `deg_a` then descending `deg_b`,
/// e.g. `a^4 + 4*a^2*b + 2*b^2`, `1/4*b^3`, `0`.
impl fmt::Display for Poly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (&(i, j), c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            match (k, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mag = c.abs();
            let mut factors: Vec<String> = Vec::with_capacity(3);
            if !mag.is_one() || (i == 0 && j == 0) {
                factors.push(mag.to_string());
            }
            for (var, e) in [("a", i), ("b", j)] {
                match e {
                    0 => {}
                    1 => factors.push(var.to_string()),
                    _ => factors.push(format!("{var}^{e}")),
                }
            }
            f.write_str(&factors.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Poly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly2({self})")
    }
}

/// Parses the canonical text format (and any reordering of it, with
/// optional whitespace).
impl FromStr for Poly2 {
    type Err = ParsePolyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(ParsePolyError::Empty);
        }
        let mut out = Poly2::zero();
        let mut rest = compact.as_str();
        let mut first = true;
        while !rest.is_empty() {
            let (negative, body) = match rest.as_bytes()[0] {
                b'-' => (true, &rest[1..]),
                b'+' if !first => (false, &rest[1..]),
                _ if first => (false, rest),
                _ => return Err(ParsePolyError::Malformed(s.to_string())),
            };
            let end = body.find(['+', '-']).unwrap_or(body.len());
            let (term_text, tail) = body.split_at(end);
            let (exp, mut coeff) =
                parse_term(term_text).ok_or_else(|| ParsePolyError::Malformed(s.to_string()))?;
            if negative {
                coeff = -coeff;
            }
            out.add_term(exp, coeff);
            rest = tail;
            first = false;
        }
        Ok(out)
    }
}

fn parse_term(text: &str) -> Option<(Exponent, BigRational)> {
    if text.is_empty() {
        return None;
    }
    let mut coeff = BigRational::one();
    let mut exp = (0u32, 0u32);
    for factor in text.split('*') {
        let (base, power) = match factor.split_once('^') {
            Some((base, p)) => (base, p.parse::<u32>().ok()?),
            None => (factor, 1),
        };
        match base {
            "a" => exp.0 += power,
            "b" => exp.1 += power,
            _ if factor.contains('^') => return None,
            _ => coeff *= parse_rational(base)?,
        }
    }
    Some((exp, coeff))
}

fn parse_rational(text: &str) -> Option<BigRational> {
    match text.split_once('/') {
        Some((n, d)) => {
            let d: BigInt = d.parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(BigRational::new(n.parse().ok()?, d))
        }
        None => Some(BigRational::from_integer(text.parse().ok()?)),
    }
}

impl serde::Serialize for Poly2 {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for Poly2 {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

/// Shorthand for an integer rational.
pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}
