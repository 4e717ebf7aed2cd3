//! The one-dimensional torus acting on the threefold with weights
//! `(-1, 1, -b, 1)`, and the decomposition of invariant monomials into the
//! generators `y = a1*a2`, `z = a1*a4`, `x_k = a2^(b-k)*a3*a4^k`.

use std::fmt;

use crate::derivation::Derivation;
use crate::error::{Error, Result};
use crate::genring::{GenPolynomial, GeneratorWord};
use crate::polyring::{ExponentVector, Polynomial, QuotientPolynomial, SurfaceParameters};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generator {
    Y,
    Z,
    X(u32),
}

impl Generator {
    pub fn lift(&self, params: &SurfaceParameters) -> ExponentVector {
        match *self {
            Generator::Y => ExponentVector::new(1, 1, 0, 0),
            Generator::Z => ExponentVector::new(1, 0, 0, 1),
            Generator::X(k) => {
                assert!(k <= params.b, "x_{k} out of range for b = {}", params.b);
                ExponentVector::new(0, params.b - k, 1, k)
            }
        }
    }

    /// Column index in the generator table: `y, z, x0, ..., x_b`.
    pub fn index(&self) -> usize {
        match *self {
            Generator::Y => 0,
            Generator::Z => 1,
            Generator::X(k) => 2 + k as usize,
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::Y => f.write_str("y"),
            Generator::Z => f.write_str("z"),
            Generator::X(k) => write!(f, "x{k}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WeightVector(pub [i64; 4]);

impl WeightVector {
    pub fn for_params(params: &SurfaceParameters) -> Self {
        WeightVector([-1, 1, -(params.b as i64), 1])
    }

    pub fn weight(&self, e: &ExponentVector) -> i64 {
        (0..4).map(|i| self.0[i] * e.get(i) as i64).sum()
    }
}

/// `-e1 + e2 - b*e3 + e4`.
pub fn weight_of_monomial(e: &ExponentVector, params: &SurfaceParameters) -> i64 {
    WeightVector::for_params(params).weight(e)
}

/// The generators `y, z, x0, ..., x_b` in column order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorTable {
    params: SurfaceParameters,
    generators: Vec<Generator>,
}

impl GeneratorTable {
    pub fn new(params: SurfaceParameters) -> Self {
        let mut generators = vec![Generator::Y, Generator::Z];
        generators.extend((0..=params.b).map(Generator::X));
        GeneratorTable { params, generators }
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn lifts(&self) -> Vec<ExponentVector> {
        self.generators.iter().map(|g| g.lift(&self.params)).collect()
    }

    pub fn params(&self) -> &SurfaceParameters {
        &self.params
    }
}

/// Multiplicity of each generator, indexed like [`GeneratorTable`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    params: SurfaceParameters,
    multiplicities: Vec<u32>,
}

impl Decomposition {
    pub fn from_multiplicities(params: SurfaceParameters, multiplicities: Vec<u32>) -> Self {
        assert_eq!(multiplicities.len(), params.b as usize + 3);
        Decomposition {
            params,
            multiplicities,
        }
    }

    pub fn multiplicity(&self, g: Generator) -> u32 {
        self.multiplicities[g.index()]
    }

    pub fn multiplicities(&self) -> &[u32] {
        &self.multiplicities
    }

    /// `Σ multiplicity(g) · lift(g)`.
    pub fn weighted_sum(&self) -> ExponentVector {
        GeneratorTable::new(self.params)
            .lifts()
            .iter()
            .zip(&self.multiplicities)
            .fold(ExponentVector::ONE, |acc, (e, &m)| acc.mul(&e.scale(m)))
    }

    pub fn to_word(&self) -> GeneratorWord {
        GeneratorWord::from_parts(
            self.params,
            self.multiplicities[0],
            self.multiplicities[1],
            self.multiplicities[2..].to_vec(),
        )
        .expect("table-shaped multiplicities")
    }
}

/// Splits `total` into `parts` integers in `[0, cap]`, greedily.
fn greedy_split(total: u32, parts: u32, cap: u32) -> Vec<u32> {
    let mut remaining = total;
    let out: Vec<u32> = (0..parts)
        .map(|_| {
            let k = remaining.min(cap);
            remaining -= k;
            k
        })
        .collect();
    assert_eq!(remaining, 0, "split of {total} into {parts} parts capped at {cap}");
    out
}

/// Writes an invariant monomial `a1^X a2^Y a3^Z a4^W` as a product of
/// generators.
///
/// With `Z > 0` there are two branches. If `W < bZ`, `W` is split into `Z`
/// parts `k_i ∈ [0, b]` and the result is `y^X · Π x_{k_i}`. Otherwise
/// `Y = MbZ + r'` with `r' < bZ`, `r'` is split into `Z` parts `b - k_i`,
/// and the result is `z^(X - MbZ) · Π x_{k_i} · y^(MbZ)`. With `Z = 0` the
/// monomial is `y^Y z^W`.
pub fn decompose_invariant(e: &ExponentVector, params: &SurfaceParameters) -> Result<Decomposition> {
    let weight = weight_of_monomial(e, params);
    if weight != 0 {
        return Err(Error::NotInvariant(e.to_string(), weight));
    }
    let [x, y, z, w] = e.0;
    let b = params.b;
    let mut mult = vec![0u32; b as usize + 3];
    if z == 0 {
        mult[Generator::Y.index()] = y;
        mult[Generator::Z.index()] = w;
    } else if w < b * z {
        mult[Generator::Y.index()] = x;
        for k in greedy_split(w, z, b) {
            mult[Generator::X(k).index()] += 1;
        }
    } else {
        let block = b * z;
        let m = y / block;
        let r = y % block;
        let z_count = x as i64 - (m * block) as i64;
        assert!(z_count >= 0, "negative z multiplicity for {e}");
        mult[Generator::Z.index()] = z_count as u32;
        for part in greedy_split(r, z, b) {
            mult[Generator::X(b - part).index()] += 1;
        }
        mult[Generator::Y.index()] = m * block;
    }
    let d = Decomposition::from_multiplicities(*params, mult);
    assert_eq!(d.weighted_sum(), *e, "decomposition does not reproduce {e}");
    Ok(d)
}

/// Rewrites an invariant polynomial in the generator symbols.
pub fn express_invariant_polynomial(p: &QuotientPolynomial) -> Result<GenPolynomial> {
    let params = *p.params();
    let mut out = GenPolynomial::zero(params);
    for (e, c) in p.value().terms() {
        let word = decompose_invariant(e, &params)?.to_word();
        out.add_term(word, c.clone());
    }
    Ok(out)
}

/// Like [`express_invariant_polynomial`] but decomposes the ambient monomials
/// as written, without passing to the quotient normal form first. `a1*a4`
/// comes out as `z` here, and as `x0 + 1` after reduction.
pub fn express_invariant_monomials(p: &Polynomial, params: &SurfaceParameters) -> Result<GenPolynomial> {
    let mut out = GenPolynomial::zero(*params);
    for (e, c) in p.terms() {
        out.add_term(decompose_invariant(e, params)?.to_word(), c.clone());
    }
    Ok(out)
}

/// Every monomial of the `∂/∂a_i` coefficient has weight `w_i`.
pub fn is_invariant_field(x: &Derivation) -> bool {
    let weights = WeightVector::for_params(x.params());
    x.coefficients()
        .iter()
        .enumerate()
        .all(|(i, c)| c.terms().all(|(e, _)| weights.weight(e) == weights.0[i]))
}
