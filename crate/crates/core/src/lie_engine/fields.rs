//! The standard complete fields δ, δ′, ε, the torus field E, and the
//! descent of invariant tangent fields to the generators of the invariant
//! ring.

use crate::derivation::Derivation;
use crate::error::{Error, Result};
use crate::genring::GeneratorWord;
use crate::polyring::{int, ExponentVector, Polynomial, QuotientPolynomial, Rational, SurfaceParameters};
use crate::torus::{is_invariant_field, Generator, GeneratorTable};

use super::certificate::CompletenessCertificate;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StandardFields {
    pub params: SurfaceParameters,
    /// `b a2^(b-1) a3 ∂1 + a4 ∂2`
    pub delta: Derivation,
    /// `a1^b ∂3 + a1^(b-1) a2^b ∂4`
    pub delta_prime: Derivation,
    /// `a1 ∂1 - a4 ∂4`
    pub eps: Derivation,
    /// `-a1 ∂1 + a2 ∂2 - b a3 ∂3 + a4 ∂4`, generating the torus action.
    pub euler: Derivation,
}

fn mono(c: i64, e: [u32; 4]) -> Polynomial {
    Polynomial::monomial(int(c), ExponentVector(e))
}

impl StandardFields {
    pub fn new(params: SurfaceParameters) -> Self {
        let b = params.b;
        let delta = Derivation::new(
            params,
            [mono(b as i64, [0, b - 1, 1, 0]), mono(1, [0, 0, 0, 1]), Polynomial::zero(), Polynomial::zero()],
        );
        let delta_prime = Derivation::new(
            params,
            [Polynomial::zero(), Polynomial::zero(), mono(1, [b, 0, 0, 0]), mono(1, [b - 1, b, 0, 0])],
        );
        let eps = Derivation::new(
            params,
            [mono(1, [1, 0, 0, 0]), Polynomial::zero(), Polynomial::zero(), mono(-1, [0, 0, 0, 1])],
        );
        let euler = Derivation::new(
            params,
            [
                mono(-1, [1, 0, 0, 0]),
                mono(1, [0, 1, 0, 0]),
                mono(-(b as i64), [0, 0, 1, 0]),
                mono(1, [0, 0, 0, 1]),
            ],
        );
        let fields = StandardFields {
            params,
            delta,
            delta_prime,
            eps,
            euler,
        };
        for (name, x) in fields.named() {
            assert!(x.annihilates_defining_polynomial(), "{name} is not tangent");
            assert!(is_invariant_field(x), "{name} is not invariant");
        }
        fields
    }

    pub fn named(&self) -> [(&'static str, &Derivation); 4] {
        [
            ("delta", &self.delta),
            ("deltaprime", &self.delta_prime),
            ("eps", &self.eps),
            ("E", &self.euler),
        ]
    }

    pub fn by_name(&self, name: &str) -> Option<&Derivation> {
        self.named().into_iter().find(|(n, _)| *n == name).map(|(_, x)| x)
    }

    pub fn delta_certificate(&self) -> CompletenessCertificate {
        CompletenessCertificate::lnd(self.delta.clone(), None).expect("δ is locally nilpotent")
    }

    pub fn delta_prime_certificate(&self) -> CompletenessCertificate {
        CompletenessCertificate::lnd(self.delta_prime.clone(), None).expect("δ′ is locally nilpotent")
    }

    pub fn eps_certificate(&self) -> CompletenessCertificate {
        CompletenessCertificate::diagonal(self.eps.clone()).expect("ε is diagonal")
    }

    /// Writes `x` as `c*name` for a standard field when possible.
    pub fn describe(&self, x: &Derivation) -> Option<String> {
        if x.is_zero() {
            return Some("0".to_string());
        }
        for (name, f) in self.named() {
            if let Some(c) = scalar_ratio(x, f) {
                return Some(scaled_name(&c, name));
            }
        }
        None
    }
}

pub fn standard_fields(params: SurfaceParameters) -> StandardFields {
    StandardFields::new(params)
}

fn scalar_ratio(x: &Derivation, base: &Derivation) -> Option<Rational> {
    let (i, lead) = base
        .coefficients()
        .iter()
        .enumerate()
        .find_map(|(i, c)| c.leading_term().map(|(e, v)| (i, (*e, v.clone()))))?;
    let c = x.coefficient(i).coefficient(&lead.0) / lead.1;
    (base.scale(&c) == *x).then_some(c)
}

fn scaled_name(c: &Rational, name: &str) -> String {
    use num_traits::One;
    if c.is_one() {
        name.to_string()
    } else if (-c).is_one() {
        format!("-{name}")
    } else {
        format!("{}*{}", crate::polyring::format_rational(c), name)
    }
}

/// Lift of a generator word times a field.
pub fn word_field(word: &GeneratorWord, base: &Derivation) -> Derivation {
    base.times(&word.lift())
}

/// The action of an invariant tangent field on `y, z, x0, ..., x_b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DescendedField {
    params: SurfaceParameters,
    images: Vec<QuotientPolynomial>,
}

impl DescendedField {
    pub fn images(&self) -> &[QuotientPolynomial] {
        &self.images
    }

    pub fn image(&self, g: Generator) -> &QuotientPolynomial {
        &self.images[g.index()]
    }

    pub fn params(&self) -> &SurfaceParameters {
        &self.params
    }

    pub fn is_nontrivial(&self) -> bool {
        self.images.iter().any(|p| !p.is_zero())
    }
}

pub fn descend(x: &Derivation) -> Result<DescendedField> {
    if !x.is_tangent() {
        return Err(Error::NotTangent);
    }
    if !is_invariant_field(x) {
        return Err(Error::NotInvariantField);
    }
    let params = *x.params();
    let images = GeneratorTable::new(params)
        .generators()
        .iter()
        .map(|g| {
            let lift = GeneratorWord::generator(params, *g).lift();
            crate::polyring::reduce(&x.apply(&lift), &params)
        })
        .collect();
    Ok(DescendedField { params, images })
}
