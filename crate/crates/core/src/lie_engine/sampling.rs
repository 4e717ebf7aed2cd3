//! Seeded random inputs for the sampled stages and property checks.

use rand::Rng;

use crate::derivation::Derivation;
use crate::genring::GeneratorWord;
use crate::polyring::{int, ExponentVector, Polynomial, SurfaceParameters};
use crate::torus::{Generator, GeneratorTable};

use super::fields::StandardFields;

/// A product of `0..=max_degree` generators drawn uniformly from
/// `y, z, x0, ..., x_b`.
pub fn random_word<R: Rng>(params: SurfaceParameters, max_degree: u32, rng: &mut R) -> GeneratorWord {
    let gens: Vec<Generator> = GeneratorTable::new(params).generators().to_vec();
    let mut w = GeneratorWord::one(params);
    for _ in 0..rng.gen_range(0..=max_degree) {
        w.mul_generator(gens[rng.gen_range(0..gens.len())], 1);
    }
    w
}

/// Up to `terms` monomials in `a1..a4` of degree at most `max_degree` with
/// small integer coefficients.
pub fn random_polynomial<R: Rng>(max_degree: u32, terms: usize, rng: &mut R) -> Polynomial {
    let mut p = Polynomial::zero();
    for _ in 0..terms {
        let mut e = [0u32; 4];
        for _ in 0..rng.gen_range(0..=max_degree) {
            e[rng.gen_range(0..4)] += 1;
        }
        let c = rng.gen_range(-5i64..=5);
        p.add_term(ExponentVector(e), int(c));
    }
    p
}

/// A random invariant function: a combination of generator words.
pub fn random_invariant<R: Rng>(params: SurfaceParameters, max_degree: u32, rng: &mut R) -> Polynomial {
    let mut p = Polynomial::zero();
    for _ in 0..rng.gen_range(1..=3) {
        let c = int(rng.gen_range(1i64..=4));
        p += random_word(params, max_degree, rng).lift().scale(&c);
    }
    p
}

/// `Σ f_i X_i` over the standard fields with random coefficients: tangent
/// to the threefold by construction.
pub fn random_tangent_field<R: Rng>(fields: &StandardFields, max_degree: u32, rng: &mut R) -> Derivation {
    let mut acc = Derivation::zero(fields.params);
    for (_, x) in fields.named() {
        if rng.gen_bool(0.5) {
            acc = &acc + &x.times(&random_polynomial(max_degree, 2, rng));
        }
    }
    acc
}
