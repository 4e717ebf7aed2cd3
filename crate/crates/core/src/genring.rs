//! Words in the invariant generators `y, z, x0, ..., x_b`, their lifts to the
//! ambient ring, and the relations among the `x_k` used to bring products of
//! `x`'s to the shape `x0^M · x_h · x_b^N`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::polyring::{format_rational, ExponentVector, Polynomial, Rational, SurfaceParameters};
use crate::torus::Generator;

/// `y^{R_y} z^{R_z} x0^{e_0} ... x_b^{e_b}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GeneratorWord {
    params: SurfaceParameters,
    y: u32,
    z: u32,
    x: Vec<u32>,
}

impl GeneratorWord {
    /// The empty word, i.e. the constant `1`.
    pub fn one(params: SurfaceParameters) -> Self {
        GeneratorWord {
            params,
            y: 0,
            z: 0,
            x: vec![0; params.b as usize + 1],
        }
    }

    pub fn from_parts(params: SurfaceParameters, y: u32, z: u32, x: Vec<u32>) -> Result<Self> {
        if x.len() != params.b as usize + 1 {
            return Err(Error::InvalidParameter(format!(
                "expected {} x-exponents, got {}",
                params.b + 1,
                x.len()
            )));
        }
        Ok(GeneratorWord { params, y, z, x })
    }

    pub fn generator(params: SurfaceParameters, g: Generator) -> Self {
        Self::generator_pow(params, g, 1)
    }

    pub fn generator_pow(params: SurfaceParameters, g: Generator, k: u32) -> Self {
        let mut w = Self::one(params);
        w.mul_generator(g, k);
        w
    }

    pub fn x_index(params: SurfaceParameters, k: u32) -> Self {
        Self::generator(params, Generator::X(k))
    }

    /// `x0 x1 ... x_b`.
    pub fn x_staircase(params: SurfaceParameters) -> Self {
        GeneratorWord {
            params,
            y: 0,
            z: 0,
            x: vec![1; params.b as usize + 1],
        }
    }

    pub fn params(&self) -> &SurfaceParameters {
        &self.params
    }

    pub fn y_exponent(&self) -> u32 {
        self.y
    }

    pub fn z_exponent(&self) -> u32 {
        self.z
    }

    pub fn x_exponent(&self, k: u32) -> u32 {
        self.x[k as usize]
    }

    pub fn x_exponents(&self) -> &[u32] {
        &self.x
    }

    pub fn exponent(&self, g: Generator) -> u32 {
        match g {
            Generator::Y => self.y,
            Generator::Z => self.z,
            Generator::X(k) => self.x[k as usize],
        }
    }

    pub fn mul_generator(&mut self, g: Generator, k: u32) {
        match g {
            Generator::Y => self.y += k,
            Generator::Z => self.z += k,
            Generator::X(i) => {
                assert!(i <= self.params.b, "x{i} out of range for b = {}", self.params.b);
                self.x[i as usize] += k
            }
        }
    }

    pub fn multiply(&self, other: &GeneratorWord) -> GeneratorWord {
        assert_eq!(self.params, other.params);
        GeneratorWord {
            params: self.params,
            y: self.y + other.y,
            z: self.z + other.z,
            x: self.x.iter().zip(&other.x).map(|(a, b)| a + b).collect(),
        }
    }

    /// Number of generator factors.
    pub fn degree(&self) -> u32 {
        self.y + self.z + self.x.iter().sum::<u32>()
    }

    pub fn is_x_word(&self) -> bool {
        self.y == 0 && self.z == 0
    }

    /// The same word with `y` and `z` removed.
    pub fn x_part(&self) -> GeneratorWord {
        GeneratorWord {
            params: self.params,
            y: 0,
            z: 0,
            x: self.x.clone(),
        }
    }

    pub fn lift_exponents(&self) -> ExponentVector {
        let mut e = Generator::Y.lift(&self.params).scale(self.y);
        e = e.mul(&Generator::Z.lift(&self.params).scale(self.z));
        for (k, &m) in self.x.iter().enumerate() {
            e = e.mul(&Generator::X(k as u32).lift(&self.params).scale(m));
        }
        e
    }

    /// The product of generator lifts, a monomial in `a1..a4`.
    pub fn lift(&self) -> Polynomial {
        Polynomial::monomial(Rational::one(), self.lift_exponents())
    }

    /// Parses `y^2*x0*x1^3`; `1` is the empty word.
    pub fn parse(params: SurfaceParameters, s: &str) -> Result<Self> {
        let mut w = Self::one(params);
        let s = s.trim();
        if s == "1" {
            return Ok(w);
        }
        let mut offset = 0;
        for factor in s.split('*') {
            let f = factor.trim();
            let (name, power) = match f.split_once('^') {
                Some((n, p)) => {
                    let p: u32 = p
                        .trim()
                        .parse()
                        .map_err(|_| Error::parse(offset, format!("bad exponent in `{f}`")))?;
                    (n.trim(), p)
                }
                None => (f, 1),
            };
            let g = parse_generator(params, name).ok_or_else(|| Error::parse(offset, format!("unknown generator `{name}`")))?;
            w.mul_generator(g, power);
            offset += factor.len() + 1;
        }
        Ok(w)
    }

    fn factors(&self) -> Vec<(Generator, u32)> {
        let mut out = Vec::new();
        if self.y > 0 {
            out.push((Generator::Y, self.y));
        }
        if self.z > 0 {
            out.push((Generator::Z, self.z));
        }
        for (k, &m) in self.x.iter().enumerate() {
            if m > 0 {
                out.push((Generator::X(k as u32), m));
            }
        }
        out
    }

    /// Factors joined by `sep`, e.g. `y * x0` with `" * "`.
    pub fn format_with_separator(&self, sep: &str) -> String {
        let factors = self.factors();
        if factors.is_empty() {
            return "1".to_string();
        }
        factors
            .iter()
            .map(|(g, m)| if *m == 1 { g.to_string() } else { format!("{g}^{m}") })
            .collect::<Vec<_>>()
            .join(sep)
    }
}

pub(crate) fn parse_generator(params: SurfaceParameters, name: &str) -> Option<Generator> {
    match name {
        "y" => Some(Generator::Y),
        "z" => Some(Generator::Z),
        _ => {
            let k: u32 = name.strip_prefix('x')?.parse().ok()?;
            (k <= params.b).then_some(Generator::X(k))
        }
    }
}

impl fmt::Display for GeneratorWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format_with_separator("*"))
    }
}

/// Rational linear combination of generator words.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenPolynomial {
    params: SurfaceParameters,
    terms: BTreeMap<GeneratorWord, Rational>,
}

impl GenPolynomial {
    pub fn zero(params: SurfaceParameters) -> Self {
        GenPolynomial {
            params,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_word(word: GeneratorWord) -> Self {
        let mut p = Self::zero(word.params);
        p.add_term(word, Rational::one());
        p
    }

    pub fn add_term(&mut self, word: GeneratorWord, c: Rational) {
        assert_eq!(word.params, self.params);
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(word).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&GeneratorWord, &Rational)> + '_ {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// `Σ c_w · lift(w)` in the ambient ring.
    pub fn lift(&self) -> Polynomial {
        let mut out = Polynomial::zero();
        for (w, c) in &self.terms {
            out.add_term(w.lift_exponents(), c.clone());
        }
        out
    }
}

impl fmt::Display for GenPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        // higher-degree words first
        let mut entries: Vec<_> = self.terms.iter().collect();
        entries.sort_by(|(a, _), (b, _)| b.degree().cmp(&a.degree()).then_with(|| b.cmp(a)));
        for (i, (w, c)) in entries.into_iter().enumerate() {
            let negative = c.is_negative();
            match (i, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let abs = c.abs();
            let word = w.to_string();
            if word == "1" {
                f.write_str(&format_rational(&abs))?;
            } else if abs.is_one() {
                f.write_str(&word)?;
            } else {
                write!(f, "{}*{}", format_rational(&abs), word)?;
            }
        }
        Ok(())
    }
}

pub fn lift(w: &GeneratorWord) -> Polynomial {
    w.lift()
}

/// One application of `x_k x_h = x_{h+k} x_0` (when `h + k ≤ b`) or
/// `x_k x_h = x_b x_{h+k-b}` (when `h + k ≥ b`). Both are exact identities of
/// ambient monomials.
pub fn rewrite_pair(k: u32, h: u32, params: &SurfaceParameters) -> (u32, u32) {
    let b = params.b;
    assert!(k <= b && h <= b, "indices ({k}, {h}) out of range for b = {b}");
    let s = h + k;
    if s <= b {
        (s, 0)
    } else {
        (b, s - b)
    }
}

/// `x0^M · x_h · x_b^N` with at most one middle factor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XNormalForm {
    pub params: SurfaceParameters,
    pub m: u32,
    pub h: Option<u32>,
    pub n: u32,
}

impl XNormalForm {
    pub fn to_word(&self) -> GeneratorWord {
        let mut w = GeneratorWord::one(self.params);
        w.mul_generator(Generator::X(0), self.m);
        if let Some(h) = self.h {
            w.mul_generator(Generator::X(h), 1);
        }
        w.mul_generator(Generator::X(self.params.b), self.n);
        w
    }

    pub fn lift(&self) -> Polynomial {
        self.to_word().lift()
    }
}

impl fmt::Display for XNormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.to_word().fmt(f)
    }
}

/// Combines middle factors (indices strictly between 0 and b) pairwise,
/// smallest indices first, until at most one is left.
pub fn x_normal_form(w: &GeneratorWord) -> Result<XNormalForm> {
    if !w.is_x_word() {
        return Err(Error::InvalidParameter(format!(
            "x_normal_form expects a word in x0..x_b only, got {w}"
        )));
    }
    let params = w.params;
    let b = params.b;
    let mut m = w.x[0];
    let mut n = if b == 0 { 0 } else { w.x[b as usize] };
    // multiset of middle indices, kept sorted
    let mut middles: Vec<u32> = Vec::new();
    for k in 1..b {
        middles.extend(std::iter::repeat_n(k, w.x[k as usize] as usize));
    }
    while middles.len() >= 2 {
        let before = middles.len();
        let k = middles.remove(0);
        let h = middles.remove(0);
        let (p, q) = rewrite_pair(k, h, &params);
        for idx in [p, q] {
            if idx == 0 {
                m += 1;
            } else if idx == b {
                n += 1;
            } else {
                let pos = middles.partition_point(|&v| v < idx);
                middles.insert(pos, idx);
            }
        }
        debug_assert!(middles.len() < before);
    }
    Ok(XNormalForm {
        params,
        m,
        h: middles.first().copied(),
        n,
    })
}

/// Expands `z^{R_z}` as `(1 + x0)^{R_z}`.
pub fn eliminate_z(w: &GeneratorWord) -> GenPolynomial {
    let params = w.params;
    let mut out = GenPolynomial::zero(params);
    let t = w.z;
    let mut base = w.clone();
    base.z = 0;
    let mut binom = BigInt::one();
    for j in 0..=t {
        let mut word = base.clone();
        word.mul_generator(Generator::X(0), j);
        out.add_term(word, Rational::from_integer(binom.clone()));
        binom = binom * BigInt::from(t - j) / BigInt::from(j + 1);
    }
    out
}
