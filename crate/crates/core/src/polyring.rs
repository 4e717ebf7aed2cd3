//! Sparse multivariate polynomials over the rationals in the ambient
//! coordinates `a1, a2, a3, a4`, and their normal form modulo the defining
//! relation `a1*a4 - a2^b*a3 = 1` of the threefold.
//!
//! The relation is oriented as the rewrite rule `a1*a4 -> a2^b*a3 + 1`. Its
//! left-hand side is a single monomial, so the rule is confluent and
//! terminating and the normal form is simply "no monomial divisible by
//! `a1*a4`". A term `c * a1^e1 * a2^e2 * a3^e3 * a4^e4` with `m = min(e1, e4)`
//! rewrites in one shot to
//! `c * a1^(e1-m) * a4^(e4-m) * a2^e2 * a3^e3 * (a2^b*a3 + 1)^m`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Exact rational scalar used everywhere.
pub type Rational = BigRational;

/// A point of ambient 4-space.
pub type Point = [Rational; 4];

pub(crate) const VAR_NAMES: [&str; 4] = ["a1", "a2", "a3", "a4"];

/// Exponents of `a1..a4`.
///
/// Ordered graded-lexicographically with `a1 > a2 > a3 > a4`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct ExponentVector(pub [u32; 4]);

impl ExponentVector {
    pub const ONE: ExponentVector = ExponentVector([0; 4]);

    pub fn new(e1: u32, e2: u32, e3: u32, e4: u32) -> Self {
        ExponentVector([e1, e2, e3, e4])
    }

    pub fn unit(var: usize) -> Self {
        let mut e = [0; 4];
        e[var] = 1;
        ExponentVector(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn get(&self, var: usize) -> u32 {
        self.0[var]
    }

    pub fn mul(&self, other: &ExponentVector) -> ExponentVector {
        ExponentVector([
            self.0[0] + other.0[0],
            self.0[1] + other.0[1],
            self.0[2] + other.0[2],
            self.0[3] + other.0[3],
        ])
    }

    pub fn scale(&self, k: u32) -> ExponentVector {
        ExponentVector(self.0.map(|e| e * k))
    }

    pub fn divides(&self, other: &ExponentVector) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    /// True when the monomial is divisible by `a1*a4`.
    pub fn is_reducible(&self) -> bool {
        self.0[0] > 0 && self.0[3] > 0
    }
}

impl Ord for ExponentVector {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for ExponentVector {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{},{})", self.0[0], self.0[1], self.0[2], self.0[3])
    }
}

/// A single nonzero term.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Monomial {
    pub coefficient: Rational,
    pub exponents: ExponentVector,
}

/// The surface parameter `n` together with the derived `b = n - 1` and
/// `d = n - 2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SurfaceParameters {
    pub n: u32,
    pub b: u32,
    pub d: u32,
}

impl SurfaceParameters {
    pub fn new(n: u32) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidParameter(format!("n must be at least 2, got {n}")));
        }
        Ok(SurfaceParameters { n, b: n - 1, d: n - 2 })
    }

    pub fn from_b(b: u32) -> Result<Self> {
        Self::new(b + 1)
    }

    /// `a1*a4 - a2^b*a3 - 1`.
    pub fn defining_polynomial(&self) -> Polynomial {
        let mut p = Polynomial::zero();
        p.add_term(ExponentVector::new(1, 0, 0, 1), Rational::one());
        p.add_term(ExponentVector::new(0, self.b, 1, 0), -Rational::one());
        p.add_term(ExponentVector::ONE, -Rational::one());
        p
    }

    pub(crate) fn check_same(&self, other: &SurfaceParameters) -> Result<()> {
        if self != other {
            return Err(Error::ParamMismatch {
                left: self.b,
                right: other.b,
            });
        }
        Ok(())
    }
}

/// Sparse polynomial in `a1..a4` with exact rational coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Polynomial {
    // Invariant: no zero coefficients.
    terms: BTreeMap<ExponentVector, Rational>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, ExponentVector::ONE)
    }

    pub fn from_int(c: i64) -> Self {
        Self::constant(Rational::from_integer(BigInt::from(c)))
    }

    /// The coordinate `a_{var+1}` (`var` is zero-based).
    pub fn var(var: usize) -> Self {
        Self::monomial(Rational::one(), ExponentVector::unit(var))
    }

    pub fn monomial(c: Rational, e: ExponentVector) -> Self {
        let mut p = Polynomial::zero();
        p.add_term(e, c);
        p
    }

    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (ExponentVector, Rational)>,
    {
        let mut p = Polynomial::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| *e == ExponentVector::ONE)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&ExponentVector, &Rational)> + '_ {
        self.terms.iter()
    }

    pub fn monomials(&self) -> impl Iterator<Item = Monomial> + '_ {
        self.terms.iter().map(|(e, c)| Monomial {
            coefficient: c.clone(),
            exponents: *e,
        })
    }

    pub fn coefficient(&self, e: &ExponentVector) -> Rational {
        self.terms.get(e).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(ExponentVector::degree).max().unwrap_or(0)
    }

    pub fn leading_term(&self) -> Option<(&ExponentVector, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn add_term(&mut self, e: ExponentVector, c: Rational) {
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

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self.terms.iter().map(|(e, x)| (*e, x * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, c: &Rational, e: &ExponentVector) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self.terms.iter().map(|(f, x)| (f.mul(e), x * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Polynomial {
        let mut result = Polynomial::one();
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = &result * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Partial derivative with respect to `a_{var+1}`.
    pub fn derivative(&self, var: usize) -> Polynomial {
        let mut out = BTreeMap::new();
        for (e, c) in &self.terms {
            let k = e.0[var];
            if k == 0 {
                continue;
            }
            let mut f = *e;
            f.0[var] -= 1;
            out.insert(f, c * Rational::from_integer(BigInt::from(k)));
        }
        Polynomial { terms: out }
    }

    pub fn evaluate(&self, point: &Point) -> Rational {
        let mut powers: [Vec<Rational>; 4] = Default::default();
        let mut total = Rational::zero();
        for (e, c) in &self.terms {
            let mut v = c.clone();
            for i in 0..4 {
                let k = e.0[i] as usize;
                if k == 0 {
                    continue;
                }
                let cache = &mut powers[i];
                if cache.is_empty() {
                    cache.push(Rational::one());
                }
                while cache.len() <= k {
                    let next = cache.last().unwrap() * &point[i];
                    cache.push(next);
                }
                v *= &cache[k];
            }
            total += v;
        }
        total
    }

    /// Substitutes `images[i]` for `a_{i+1}`.
    pub fn substitute(&self, images: &[Polynomial; 4]) -> Polynomial {
        let mut powers: [Vec<Polynomial>; 4] = Default::default();
        let mut total = Polynomial::zero();
        for (e, c) in &self.terms {
            let mut v = Polynomial::constant(c.clone());
            for i in 0..4 {
                let k = e.0[i] as usize;
                if k == 0 {
                    continue;
                }
                // plain coordinate images need no expansion
                if images[i] == Polynomial::var(i) {
                    v = v.mul_monomial(&Rational::one(), &ExponentVector::unit(i).scale(k as u32));
                    continue;
                }
                let cache = &mut powers[i];
                if cache.is_empty() {
                    cache.push(Polynomial::one());
                }
                while cache.len() <= k {
                    let next = cache.last().unwrap() * &images[i];
                    cache.push(next);
                }
                v = &v * &cache[k];
            }
            total += v;
        }
        total
    }

    /// Normal form modulo the defining relation; see [`reduce`].
    pub fn reduced(&self, params: &SurfaceParameters) -> Polynomial {
        let mut out = Polynomial::zero();
        let shift = ExponentVector::new(0, params.b, 1, 0);
        for (e, c) in &self.terms {
            let m = e.0[0].min(e.0[3]);
            if m == 0 {
                out.add_term(*e, c.clone());
                continue;
            }
            let base = ExponentVector([e.0[0] - m, e.0[1], e.0[2], e.0[3] - m]);
            let mut binom = BigInt::one();
            for j in 0..=m {
                let f = base.mul(&shift.scale(j));
                out.add_term(f, c * Rational::from_integer(binom.clone()));
                binom = binom * BigInt::from(m - j) / BigInt::from(j + 1);
            }
        }
        out
    }

    pub fn is_reduced(&self) -> bool {
        self.terms.keys().all(|e| !e.is_reducible())
    }

    /// Parses with a caller-supplied identifier resolver, e.g. to admit
    /// generator symbols next to the coordinates.
    pub fn parse_with<F>(input: &str, resolve: F) -> Result<Polynomial>
    where
        F: Fn(&str) -> Option<Polynomial>,
    {
        let tokens = tokenize(input)?;
        let mut parser = Parser {
            tokens,
            pos: 0,
            resolve: &resolve,
            len: input.len(),
        };
        let p = parser.expr()?;
        if parser.pos != parser.tokens.len() {
            let (off, _) = &parser.tokens[parser.pos];
            return Err(Error::parse(*off, "unexpected trailing input"));
        }
        Ok(p)
    }

    /// Writes the polynomial with custom variable names and a monomial
    /// factor separator.
    pub fn format_with(&self, names: &[&str; 4]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            if i == 0 {
                if negative {
                    s.push('-');
                }
            } else if negative {
                s.push_str(" - ");
            } else {
                s.push_str(" + ");
            }
            let abs = c.abs();
            let vars: Vec<String> = (0..4)
                .filter(|&v| e.0[v] > 0)
                .map(|v| {
                    if e.0[v] == 1 {
                        names[v].to_string()
                    } else {
                        format!("{}^{}", names[v], e.0[v])
                    }
                })
                .collect();
            if vars.is_empty() {
                s.push_str(&format_rational(&abs));
            } else {
                if !abs.is_one() {
                    s.push_str(&format_rational(&abs));
                    s.push('*');
                }
                s.push_str(&vars.join("*"));
            }
        }
        s
    }
}

pub(crate) fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub(crate) fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num
        .parse()
        .map_err(|_| Error::parse(0, format!("bad rational `{s}`")))?;
    let den: BigInt = den
        .parse()
        .map_err(|_| Error::parse(0, format!("bad rational `{s}`")))?;
    if den.is_zero() {
        return Err(Error::parse(0, "zero denominator"));
    }
    Ok(Rational::new(num, den))
}

pub fn rational(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format_with(&VAR_NAMES))
    }
}

pub(crate) fn resolve_coordinate(name: &str) -> Option<Polynomial> {
    VAR_NAMES
        .iter()
        .position(|v| *v == name)
        .map(Polynomial::var)
}

impl FromStr for Polynomial {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Polynomial::parse_with(s, resolve_coordinate)
    }
}

impl Serialize for Polynomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Polynomial {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl AddAssign<&Polynomial> for Polynomial {
    fn add_assign(&mut self, rhs: &Polynomial) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, c.clone());
        }
    }
}

impl AddAssign<Polynomial> for Polynomial {
    fn add_assign(&mut self, rhs: Polynomial) {
        if self.terms.len() < rhs.terms.len() {
            let lhs = std::mem::replace(self, rhs);
            for (e, c) in lhs.terms {
                self.add_term(e, c);
            }
        } else {
            for (e, c) in rhs.terms {
                self.add_term(e, c);
            }
        }
    }
}

impl SubAssign<&Polynomial> for Polynomial {
    fn sub_assign(&mut self, rhs: &Polynomial) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, -c.clone());
        }
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for Polynomial {
    type Output = Polynomial;
    fn add(mut self, rhs: Polynomial) -> Polynomial {
        self += rhs;
        self
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for Polynomial {
    type Output = Polynomial;
    fn sub(mut self, rhs: Polynomial) -> Polynomial {
        self -= &rhs;
        self
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect(),
        }
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        if rhs.terms.len() == 1 {
            let (e, c) = rhs.terms.iter().next().unwrap();
            return self.mul_monomial(c, e);
        }
        if self.terms.len() == 1 {
            let (e, c) = self.terms.iter().next().unwrap();
            return rhs.mul_monomial(c, e);
        }
        let mut out = Polynomial::zero();
        for (e, c) in &self.terms {
            for (f, d) in &rhs.terms {
                out.add_term(e.mul(f), c * d);
            }
        }
        out
    }
}

impl Mul for Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: Polynomial) -> Polynomial {
        &self * &rhs
    }
}

/// A polynomial in quotient normal form for the threefold with the given
/// parameters.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuotientPolynomial {
    value: Polynomial,
    params: SurfaceParameters,
}

impl QuotientPolynomial {
    pub fn value(&self) -> &Polynomial {
        &self.value
    }

    pub fn params(&self) -> &SurfaceParameters {
        &self.params
    }

    pub fn into_inner(self) -> Polynomial {
        self.value
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }
}

impl fmt::Display for QuotientPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.value.fmt(f)
    }
}

/// Normal form of `p` modulo `a1*a4 - a2^b*a3 - 1`.
pub fn reduce(p: &Polynomial, params: &SurfaceParameters) -> QuotientPolynomial {
    QuotientPolynomial {
        value: p.reduced(params),
        params: *params,
    }
}

pub fn evaluate(p: &Polynomial, point: &Point) -> Rational {
    p.evaluate(point)
}

/// Equality in the coordinate ring of the threefold.
pub fn equals_mod_ideal(p: &Polynomial, q: &Polynomial, params: &SurfaceParameters) -> bool {
    (p - q).reduced(params).is_zero()
}

// ---- parser ------------------------------------------------------------

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Number(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    LParen,
    RParen,
}

fn tokenize(input: &str) -> Result<Vec<(usize, Token)>> {
    let bytes = input.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let ch = bytes[i] as char;
        match ch {
            ' ' | '\t' | '\n' | '\r' => {
                i += 1;
            }
            '+' => {
                out.push((i, Token::Plus));
                i += 1;
            }
            '-' => {
                out.push((i, Token::Minus));
                i += 1;
            }
            '*' => {
                out.push((i, Token::Star));
                i += 1;
            }
            '^' => {
                out.push((i, Token::Caret));
                i += 1;
            }
            '/' => {
                out.push((i, Token::Slash));
                i += 1;
            }
            '(' => {
                out.push((i, Token::LParen));
                i += 1;
            }
            ')' => {
                out.push((i, Token::RParen));
                i += 1;
            }
            c if c.is_ascii_digit() => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n: BigInt = input[start..i].parse().expect("digits");
                out.push((start, Token::Number(n)));
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((start, Token::Ident(input[start..i].to_string())));
            }
            other => return Err(Error::parse(i, format!("unexpected character `{other}`"))),
        }
    }
    Ok(out)
}

struct Parser<'a> {
    tokens: Vec<(usize, Token)>,
    pos: usize,
    resolve: &'a dyn Fn(&str) -> Option<Polynomial>,
    len: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.tokens.get(self.pos).map(|(o, _)| *o).unwrap_or(self.len)
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).map(|(_, t)| t.clone());
        self.pos += 1;
        t
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let mut negate = match self.peek() {
            Some(Token::Plus) => {
                self.pos += 1;
                false
            }
            Some(Token::Minus) => {
                self.pos += 1;
                true
            }
            _ => false,
        };
        let mut acc = Polynomial::zero();
        loop {
            let t = self.term()?;
            if negate {
                acc -= &t;
            } else {
                acc += t;
            }
            negate = match self.peek() {
                Some(Token::Plus) => false,
                Some(Token::Minus) => true,
                _ => break,
            };
            self.pos += 1;
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Token::Star) => {
                    self.pos += 1;
                    let f = self.factor()?;
                    acc = &acc * &f;
                }
                Some(Token::Number(_)) | Some(Token::Ident(_)) | Some(Token::LParen) => {
                    let f = self.factor()?;
                    acc = &acc * &f;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Polynomial> {
        let base = self.atom()?;
        if self.peek() == Some(&Token::Caret) {
            self.pos += 1;
            let off = self.offset();
            match self.next() {
                Some(Token::Number(k)) => {
                    let k = k
                        .to_u32()
                        .ok_or_else(|| Error::parse(off, "exponent too large"))?;
                    return Ok(base.pow(k));
                }
                _ => return Err(Error::parse(off, "expected a non-negative integer exponent")),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Polynomial> {
        let off = self.offset();
        match self.next() {
            Some(Token::Number(n)) => {
                if self.peek() == Some(&Token::Slash) {
                    self.pos += 1;
                    let off = self.offset();
                    match self.next() {
                        Some(Token::Number(d)) if !d.is_zero() => {
                            Ok(Polynomial::constant(Rational::new(n, d)))
                        }
                        _ => Err(Error::parse(off, "expected a nonzero denominator")),
                    }
                } else {
                    Ok(Polynomial::constant(Rational::from_integer(n)))
                }
            }
            Some(Token::Ident(name)) => (self.resolve)(&name)
                .ok_or_else(|| Error::parse(off, format!("unknown symbol `{name}`"))),
            Some(Token::LParen) => {
                let inner = self.expr()?;
                let off = self.offset();
                match self.next() {
                    Some(Token::RParen) => Ok(inner),
                    _ => Err(Error::parse(off, "expected `)`")),
                }
            }
            _ => Err(Error::parse(off, "expected a number, symbol or `(`")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Polynomial {
        s.parse().unwrap()
    }

    fn b(b: u32) -> SurfaceParameters {
        SurfaceParameters::from_b(b).unwrap()
    }

    #[test]
    fn add_examples() {
        assert_eq!(&p("a1 + a2") + &p("-a1"), p("a2"));
        assert_eq!(&p("a1*a2 - 3") + &Polynomial::zero(), p("a1*a2 - 3"));
        assert_eq!(&p("2*a1*a4") + &p("3*a1*a4"), p("5*a1*a4"));
    }

    #[test]
    fn multiply_examples() {
        assert_eq!(&p("a1") * &p("a4"), p("a1*a4"));
        assert_eq!(&p("a1 + 1") * &p("a1 - 1"), p("a1^2 - 1"));
        assert_eq!(&p("a1*a2") * &p("a2^2*a3"), p("a1*a2^3*a3"));
    }

    #[test]
    fn reduce_examples() {
        let params = b(2);
        assert_eq!(reduce(&p("a1*a4"), &params).into_inner(), p("a2^2*a3 + 1"));
        assert_eq!(reduce(&p("a1^2*a4"), &params).into_inner(), p("a1*a2^2*a3 + a1"));
        assert_eq!(
            reduce(&p("a1^2*a4^2"), &params).into_inner(),
            p("a2^4*a3^2 + 2*a2^2*a3 + 1")
        );
        // b = 1 degenerate rule a1*a4 -> a2*a3 + 1
        assert_eq!(reduce(&p("a1*a4"), &b(1)).into_inner(), p("a2*a3 + 1"));
    }

    #[test]
    fn evaluate_examples() {
        let pt = [int(1), int(1), int(1), int(2)];
        assert_eq!(p("a1*a4 - a2^2*a3").evaluate(&pt), int(1));
        assert_eq!(Polynomial::zero().evaluate(&pt), int(0));
        assert_eq!(p("a2*a3*a4").evaluate(&pt), int(2));
    }

    #[test]
    fn equals_mod_ideal_examples() {
        let params = b(2);
        assert!(equals_mod_ideal(&p("a1*a4"), &p("a2^2*a3 + 1"), &params));
        assert!(!equals_mod_ideal(&p("a1"), &p("a2"), &params));
        // z = 1 + x0
        assert!(equals_mod_ideal(&p("a1*a4"), &p("1 + a2^2*a3"), &params));
    }

    #[test]
    fn params_validation() {
        assert!(SurfaceParameters::new(1).is_err());
        assert!(SurfaceParameters::new(0).is_err());
        let s = SurfaceParameters::new(2).unwrap();
        assert_eq!((s.n, s.b, s.d), (2, 1, 0));
    }

    #[test]
    fn display_and_parse() {
        let q = p("a1*a4 - a2^2*a3 - 1");
        assert_eq!(q.to_string(), "-a2^2*a3 + a1*a4 - 1");
        assert_eq!(q.to_string().parse::<Polynomial>().unwrap(), q);
        assert_eq!(p("-3/4*a1 + 1/2").to_string(), "-3/4*a1 + 1/2");
        assert_eq!(p("2 a1 a2^2"), p("2*a1*a2^2"));
        assert_eq!(p("(a1 + a2)^2"), p("a1^2 + 2*a1*a2 + a2^2"));
        assert_eq!(Polynomial::zero().to_string(), "0");
        assert_eq!(p("-a3"), -p("a3"));
        assert!("a5".parse::<Polynomial>().is_err());
        assert!("a1^".parse::<Polynomial>().is_err());
        assert!("1/0".parse::<Polynomial>().is_err());
        assert!("(a1".parse::<Polynomial>().is_err());
    }

    #[test]
    fn grlex_order() {
        let a = ExponentVector::new(1, 0, 0, 0);
        let bb = ExponentVector::new(0, 1, 0, 0);
        let c = ExponentVector::new(0, 0, 0, 2);
        assert!(a > bb);
        assert!(c > a);
        assert_eq!(p("a2 + a1 + a4^2").to_string(), "a4^2 + a1 + a2");
    }

    #[test]
    fn substitute_and_derivative() {
        let f = p("a1^2*a2 + 3");
        assert_eq!(f.derivative(0), p("2*a1*a2"));
        assert_eq!(f.derivative(2), Polynomial::zero());
        let images = [p("a1 + a2"), p("a2"), p("a3"), p("a4")];
        assert_eq!(f.substitute(&images), p("(a1 + a2)^2*a2 + 3"));
    }
}
