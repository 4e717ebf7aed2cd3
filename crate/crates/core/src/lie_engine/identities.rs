//! The closed-form identities behind the membership scripts, checked by
//! direct computation.

use num_bigint::BigInt;
use num_traits::One;

use crate::derivation::{pushforward, Derivation};
use crate::error::Result;
use crate::genring::GeneratorWord;
use crate::polyring::{int, Polynomial, Rational, SurfaceParameters};
use crate::torus::{Generator, GeneratorTable};

use super::fields::StandardFields;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityCheck {
    pub name: String,
    pub holds: bool,
    /// `lhs - rhs` when the identity fails.
    pub difference: Option<String>,
}

impl IdentityCheck {
    fn functions(name: String, lhs: &Polynomial, rhs: &Polynomial, params: &SurfaceParameters) -> Self {
        let diff = (lhs - rhs).reduced(params);
        IdentityCheck {
            name,
            holds: diff.is_zero(),
            difference: (!diff.is_zero()).then(|| diff.to_string()),
        }
    }

    fn fields(name: String, lhs: &Derivation, rhs: &Derivation) -> Self {
        let diff = lhs - rhs;
        IdentityCheck {
            name,
            holds: diff.is_zero(),
            difference: (!diff.is_zero()).then(|| diff.to_string()),
        }
    }
}

fn gen(params: SurfaceParameters, g: Generator) -> Polynomial {
    GeneratorWord::generator(params, g).lift()
}

fn xs(params: SurfaceParameters, ks: &[u32]) -> Polynomial {
    let mut w = GeneratorWord::one(params);
    for &k in ks {
        w.mul_generator(Generator::X(k), 1);
    }
    w.lift()
}

fn falling(top: u32, count: u32) -> Rational {
    let v = (0..count).fold(BigInt::one(), |acc, i| acc * BigInt::from(top - i));
    Rational::from_integer(v)
}

/// The action of δ, δ′ and ε on the generators.
pub fn function_identities(f: &StandardFields) -> Vec<IdentityCheck> {
    let p = f.params;
    let b = p.b;
    let y = gen(p, Generator::Y);
    let x = |k| gen(p, Generator::X(k));
    let mut out = Vec::new();
    for k in 0..=b {
        out.push(IdentityCheck::functions(
            format!("eps(x{k}) = -{k} x{k}"),
            &f.eps.apply(&x(k)),
            &x(k).scale(&int(-(k as i64))),
            &p,
        ));
    }
    out.push(IdentityCheck::functions("eps(y) = y".into(), &f.eps.apply(&y), &y, &p));
    out.push(IdentityCheck::functions(
        "delta(y) = 1 + n x0".into(),
        &f.delta.apply(&y),
        &(&Polynomial::one() + &x(0).scale(&int(p.n as i64))),
        &p,
    ));
    for k in 0..=b {
        let rhs = if k < b {
            x(k + 1).scale(&int((b - k) as i64))
        } else {
            Polynomial::zero()
        };
        out.push(IdentityCheck::functions(
            format!("delta(x{k}) = {} x{}", b - k, k + 1),
            &f.delta.apply(&x(k)),
            &rhs,
            &p,
        ));
    }
    out.push(IdentityCheck::functions(
        "deltaprime(x0) = y^b".into(),
        &f.delta_prime.apply(&x(0)),
        &y.pow(b),
        &p,
    ));
    out.push(IdentityCheck::functions(
        "deltaprime(y) = 0".into(),
        &f.delta_prime.apply(&y),
        &Polynomial::zero(),
        &p,
    ));
    out
}

/// `[ε, δ] = -δ` and `[ε, δ′] = b δ′`.
pub fn commutation_identities(f: &StandardFields) -> Result<Vec<IdentityCheck>> {
    let b = f.params.b as i64;
    Ok(vec![
        IdentityCheck::fields("[eps, delta] = -delta".into(), &f.eps.bracket(&f.delta)?, &-&f.delta),
        IdentityCheck::fields(
            "[eps, deltaprime] = b deltaprime".into(),
            &f.eps.bracket(&f.delta_prime)?,
            &f.delta_prime.scale(&int(b)),
        ),
    ])
}

/// The torus field kills every generator lift.
pub fn euler_identities(f: &StandardFields) -> Vec<IdentityCheck> {
    GeneratorTable::new(f.params)
        .generators()
        .iter()
        .map(|&g| {
            IdentityCheck::functions(format!("E({g}) = 0"), &f.euler.apply(&gen(f.params, g)), &Polynomial::zero(), &f.params)
        })
        .collect()
}

/// `X_1 = [δ, x0 ε]`, `X_s = [δ, X_(s-1)]` against
/// `s·b(b-1)···(b-s+2)·x_(s-1) δ + b(b-1)···(b-s+1)·x_s ε`.
pub fn x_chain_identities(f: &StandardFields) -> Result<Vec<IdentityCheck>> {
    let p = f.params;
    let b = p.b;
    let mut out = Vec::new();
    let mut cur = f.eps.times(&xs(p, &[0]));
    for s in 1..=b {
        cur = f.delta.bracket(&cur)?;
        let rhs = &f.delta.times(&xs(p, &[s - 1])).scale(&(int(s as i64) * falling(b, s - 1)))
            + &f.eps.times(&xs(p, &[s])).scale(&falling(b, s));
        out.push(IdentityCheck::fields(format!("X_{s}"), &cur, &rhs));
    }
    // X_b = b!·x_b ε + b²(b-1)···2·x_(b-1) δ
    let terminal = &f.eps.times(&xs(p, &[b])).scale(&falling(b, b))
        + &f.delta.times(&xs(p, &[b - 1])).scale(&(int(b as i64) * falling(b, b - 1)));
    out.push(IdentityCheck::fields("X_b terminal form".into(), &cur, &terminal));
    Ok(out)
}

/// `s1 = [x0 ε, x_b δ]`, `s2 = [δ, x0 x_b ε]` and `s1 + s2 = -b x0 x_b δ`.
pub fn delta_pair_identities(f: &StandardFields) -> Result<Vec<IdentityCheck>> {
    let p = f.params;
    let b = p.b;
    let bi = int(b as i64);
    let x0xb_delta = f.delta.times(&xs(p, &[0, b]));
    let x1xb_eps = f.eps.times(&xs(p, &[1, b]));
    let s1 = f.eps.times(&xs(p, &[0])).bracket(&f.delta.times(&xs(p, &[b])))?;
    let s2 = f.delta.bracket(&f.eps.times(&xs(p, &[0, b])))?;
    let s1_rhs = &x0xb_delta.scale(&-(int(1) + &bi)) - &x1xb_eps.scale(&bi);
    let s2_rhs = &x0xb_delta + &x1xb_eps.scale(&bi);
    Ok(vec![
        IdentityCheck::fields("s1 = -(1+b) x0 x_b delta - b x1 x_b eps".into(), &s1, &s1_rhs),
        IdentityCheck::fields("s2 = x0 x_b delta + b x1 x_b eps".into(), &s2, &s2_rhs),
        IdentityCheck::fields("s1 + s2 = -b x0 x_b delta".into(), &(&s1 + &s2), &x0xb_delta.scale(&-bi)),
    ])
}

/// `[x0 ε, y^r δ′] = c·x0 y^r δ′ - y^(b+r) ε`, returning the `c` that makes
/// this hold (read off from the bracket), if any.
pub fn y_eps_constant(f: &StandardFields, r: u32) -> Result<Option<Rational>> {
    let p = f.params;
    let y = gen(p, Generator::Y);
    let x0 = gen(p, Generator::X(0));
    let lhs = f.eps.times(&x0).bracket(&f.delta_prime.times(&y.pow(r)))?;
    let rest = &lhs + &f.eps.times(&y.pow(p.b + r));
    let unit = f.delta_prime.times(&(&x0 * &y.pow(r)));
    Ok(scalar_multiple(&rest, &unit))
}

/// `[y^(b+r) ε, x0^m x_k x_b^n ε] = c · y^(b+r) x0^m x_k x_b^n ε`; returns `c`.
pub fn mixed_constant(f: &StandardFields, r: u32, m: u32, k: u32, n: u32) -> Result<Option<Rational>> {
    let p = f.params;
    let b = p.b;
    let yw = GeneratorWord::generator_pow(p, Generator::Y, b + r);
    let mut xw = GeneratorWord::one(p);
    xw.mul_generator(Generator::X(0), m);
    xw.mul_generator(Generator::X(k), 1);
    xw.mul_generator(Generator::X(b), n);
    let lhs = f.eps.times(&yw.lift()).bracket(&f.eps.times(&xw.lift()))?;
    let unit = f.eps.times(&yw.multiply(&xw).lift());
    Ok(scalar_multiple(&lhs, &unit))
}

fn scalar_multiple(x: &Derivation, unit: &Derivation) -> Option<Rational> {
    let (i, (e, v)) = unit
        .coefficients()
        .iter()
        .enumerate()
        .find_map(|(i, c)| c.leading_term().map(|(e, v)| (i, (*e, v.clone()))))?;
    let c = x.coefficient(i).coefficient(&e) / v;
    (unit.scale(&c) == *x).then_some(c)
}

/// `[fX, gY] = fg[X,Y] + f X(g) Y - g Y(f) X`.
pub fn bracket_expansion_holds(f: &Polynomial, x: &Derivation, g: &Polynomial, y: &Derivation) -> Result<bool> {
    let lhs = x.times(f).bracket(&y.times(g))?;
    let rhs = &(&x.bracket(y)?.times(&(f * g)) + &y.times(&(f * &x.apply(g))))
        - &x.times(&(g * &y.apply(f)));
    Ok(lhs == rhs)
}

/// `φ_* ε = ε + (1+b) x_b δ` for `φ = exp(x_b δ)`, and `ε(x_b) = -b x_b`.
pub fn flow_identities(f: &StandardFields, phi: &crate::derivation::RingAutomorphism) -> Result<Vec<IdentityCheck>> {
    let p = f.params;
    let b = p.b;
    let xb = xs(p, &[b]);
    let pushed = pushforward(phi, &f.eps)?;
    let expected = &f.eps + &f.delta.times(&xb).scale(&int(1 + b as i64));
    Ok(vec![
        IdentityCheck::fields("phi_* eps = eps + (1+b) x_b delta".into(), &pushed, &expected),
        IdentityCheck::fields("phi_* delta = delta".into(), &pushforward(phi, &f.delta)?, &f.delta),
        IdentityCheck::functions("eps(x_b) = -b x_b".into(), &f.eps.apply(&xb), &xb.scale(&int(-(b as i64))), &p),
    ])
}
