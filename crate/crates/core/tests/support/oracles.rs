//! Independent reference implementations used to cross-check the library.
#![allow(dead_code)]

use dg_density::polyring::int;
use dg_density::{ExponentVector, GeneratorWord, Polynomial, Rational, SurfaceParameters};
use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::Rng;

/// Exponent vectors of `y, z, x0, ..., x_b`, computed from the definitions.
pub fn generator_lifts(b: u32) -> Vec<[u32; 4]> {
    let mut out = vec![[1, 1, 0, 0], [1, 0, 0, 1]];
    for k in 0..=b {
        out.push([0, b - k, 1, k]);
    }
    out
}

/// Torus weight with weights `(-1, 1, -b, 1)`.
pub fn weight(e: [u32; 4], b: u32) -> i64 {
    -(e[0] as i64) + e[1] as i64 - (b as i64) * e[2] as i64 + e[3] as i64
}

/// Every exponent vector of total degree at most `max`.
pub fn all_vectors(max: u32) -> Vec<[u32; 4]> {
    let mut out = Vec::new();
    for a in 0..=max {
        for b in 0..=max - a {
            for c in 0..=max - a - b {
                for d in 0..=max - a - b - c {
                    out.push([a, b, c, d]);
                }
            }
        }
    }
    out
}

/// Depth-first search for multiplicities `m` with `Σ m_i lift_i = e`.
pub fn brute_force_decompose(e: [u32; 4], b: u32) -> Option<Vec<u32>> {
    fn go(rest: [u32; 4], i: usize, lifts: &[[u32; 4]], mult: &mut Vec<u32>) -> bool {
        if rest == [0; 4] {
            return true;
        }
        if i == lifts.len() {
            return false;
        }
        let g = lifts[i];
        let max = (0..4).filter(|&v| g[v] > 0).map(|v| rest[v] / g[v]).min().unwrap();
        for m in (0..=max).rev() {
            let next = [0, 1, 2, 3].map(|v| rest[v] - m * g[v]);
            mult[i] = m;
            if go(next, i + 1, lifts, mult) {
                return true;
            }
        }
        mult[i] = 0;
        false
    }
    let lifts = generator_lifts(b);
    let mut mult = vec![0; lifts.len()];
    go(e, 0, &lifts, &mut mult).then_some(mult)
}

/// Rewrites one randomly chosen term divisible by `a1 a4` at a time, using
/// `a1 a4 -> 1 + a2^b a3`, until no such term is left.
pub fn stepwise_reduce<R: Rng>(p: &Polynomial, b: u32, rng: &mut R) -> Polynomial {
    let mut terms: Vec<([u32; 4], Rational)> = p.terms().map(|(e, c)| (e.0, c.clone())).collect();
    loop {
        terms.shuffle(rng);
        let Some(pos) = terms.iter().position(|(e, _)| e[0] > 0 && e[3] > 0) else {
            break;
        };
        let (e, c) = terms.swap_remove(pos);
        let base = [e[0] - 1, e[1], e[2], e[3] - 1];
        terms.push((base, c.clone()));
        terms.push(([base[0], base[1] + b, base[2] + 1, base[3]], c));
        terms.shuffle(rng);
        // merge equal exponents in random order
        let mut merged: Vec<([u32; 4], Rational)> = Vec::new();
        for (e, c) in terms.drain(..) {
            match merged.iter_mut().find(|(f, _)| *f == e) {
                Some((_, d)) => *d += c,
                None => merged.push((e, c)),
            }
        }
        terms = merged.into_iter().filter(|(_, c)| !c.is_zero()).collect();
    }
    Polynomial::from_terms(terms.into_iter().map(|(e, c)| (ExponentVector(e), c)))
}

/// All words `x_{i1}···x_{il}` with `l ≤ max_len`, one per multiset.
pub fn x_words(params: SurfaceParameters, max_len: u32) -> Vec<GeneratorWord> {
    fn go(params: SurfaceParameters, start: u32, left: u32, cur: &mut Vec<u32>, out: &mut Vec<GeneratorWord>) {
        let mut x = vec![0; params.b as usize + 1];
        for &i in cur.iter() {
            x[i as usize] += 1;
        }
        out.push(GeneratorWord::from_parts(params, 0, 0, x).unwrap());
        if left == 0 {
            return;
        }
        for i in start..=params.b {
            cur.push(i);
            go(params, i, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(params, 0, max_len, &mut Vec::new(), &mut out);
    out
}

/// A polynomial from `(exponents, coefficient)` pairs.
pub fn poly(terms: &[([u32; 4], i64)]) -> Polynomial {
    Polynomial::from_terms(terms.iter().map(|(e, c)| (ExponentVector(*e), int(*c))))
}

/// Every closed-form target with exponents in the box, `0 ≤ k ≤ b`.
pub fn all_targets(b: u32, nmax: u32, mmax: u32, rmax: u32) -> Vec<dg_density::lie_engine::Target> {
    use dg_density::lie_engine::Target;
    let ok_k = |k: u32, n: u32| n > 0 || k == 0 || k == b;
    let mut out = Vec::new();
    for k in 0..=b {
        for n in 1..=nmax {
            out.push(Target::XDelta { k, n });
        }
    }
    for m in 0..=mmax {
        for k in 0..=b {
            for n in 0..=nmax {
                if ok_k(k, n) {
                    out.push(Target::XEps { m, k, n });
                }
            }
        }
    }
    for r in 0..=rmax {
        out.push(Target::YEps { r });
        for m in 0..=mmax {
            for k in 0..=b {
                for n in 0..=nmax {
                    if ok_k(k, n) {
                        out.push(Target::Mixed { r, m, k, n });
                    }
                }
            }
        }
    }
    out
}

/// Negates the leading term of the first nonzero coefficient of the claim
/// at `step`. `None` if that claim is zero.
pub fn flip_sign(
    script: &dg_density::lie_engine::MembershipScript,
    step: usize,
) -> Option<dg_density::lie_engine::MembershipScript> {
    let claimed = &script.steps[step].claimed;
    let mut coeffs = claimed.coefficients().clone();
    let slot = coeffs.iter_mut().find(|c| !c.is_zero())?;
    let (e, c) = slot.leading_term().map(|(e, c)| (*e, c.clone()))?;
    slot.add_term(e, -(c.clone() + c));
    let mut out = script.clone();
    out.steps[step].claimed = dg_density::Derivation::new(*claimed.params(), coeffs);
    Some(out)
}
