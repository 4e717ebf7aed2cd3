//! Acceptance run: every criterion is checked exactly and reported on one
//! line. Exits nonzero if any criterion fails.

#[path = "../../core/tests/support/oracles.rs"]
mod oracles;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::{Duration, Instant};

use dg_density::genring::x_normal_form;
use dg_density::lie_engine::identities::{
    commutation_identities, function_identities, delta_pair_identities, x_chain_identities, IdentityCheck,
};
use dg_density::lie_engine::sampling::{random_polynomial, random_tangent_field, random_word};
use dg_density::lie_engine::spanning::flow_field;
use dg_density::lie_engine::{
    find_spanning_point, plan_membership, standard_fields, verify_script, MembershipScript, Target,
};
use dg_density::polyring::{equals_mod_ideal, reduce};
use dg_density::torus::decompose_invariant;
use dg_density::{exp_lnd, pushforward, Derivation, ExponentVector, GeneratorWord, Polynomial, SurfaceParameters};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn params(b: u32) -> SurfaceParameters {
    SurfaceParameters::from_b(b).unwrap()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn all_hold(checks: &[IdentityCheck], ctx: &str) -> Result<(), String> {
    match checks.iter().find(|c| !c.holds) {
        Some(c) => Err(format!("{ctx}: {} fails, difference {}", c.name, c.difference.as_deref().unwrap_or("?"))),
        None => Ok(()),
    }
}

fn verify_cli() -> Check {
    let mut slowest = (0, Duration::ZERO);
    for n in 2..=7u32 {
        let start = Instant::now();
        let status = Command::new(env!("CARGO_BIN_EXE_dgverify"))
            .args(["verify", "--n", &n.to_string(), "--quiet"])
            .status()
            .map_err(|e| e.to_string())?;
        let t = start.elapsed();
        ensure(status.code() == Some(0), || format!("n = {n}: exit {:?}", status.code()))?;
        ensure(t < Duration::from_secs(120), || format!("n = {n}: {t:.1?}"))?;
        if t > slowest.1 {
            slowest = (n, t);
        }
    }
    Ok(format!("n = 2..7 exit 0, slowest n = {} in {:.1?}", slowest.0, slowest.1))
}

fn function_tables() -> Check {
    let mut count = 0;
    for b in 1..=6 {
        let f = standard_fields(params(b));
        let funcs = function_identities(&f);
        let comm = commutation_identities(&f).map_err(|e| e.to_string())?;
        all_hold(&funcs, &format!("b = {b}"))?;
        all_hold(&comm, &format!("b = {b}"))?;
        ensure(comm.len() == 2, || "commutation table incomplete".into())?;
        count += funcs.len() + comm.len();
    }
    Ok(format!("{count} identities, b = 1..6"))
}

fn x_chain() -> Check {
    let mut count = 0;
    for b in 1..=5 {
        let checks = x_chain_identities(&standard_fields(params(b))).map_err(|e| e.to_string())?;
        all_hold(&checks, &format!("b = {b}"))?;
        ensure(checks.len() == b as usize + 1, || format!("b = {b}: chain incomplete"))?;
        count += checks.len();
    }
    Ok(format!("{count} identities incl. terminal form, b = 1..5"))
}

fn delta_pair() -> Check {
    for b in 1..=6 {
        let checks = delta_pair_identities(&standard_fields(params(b))).map_err(|e| e.to_string())?;
        all_hold(&checks, &format!("b = {b}"))?;
    }
    Ok("s1, s2 and s1 + s2 = -b x0 x_b delta, b = 1..6".into())
}

fn planned(t: &Target, b: u32) -> Result<MembershipScript, String> {
    let s = plan_membership(t, params(b)).map_err(|e| format!("b = {b}, {t}: {e}"))?;
    ensure(s.target == t.field(&standard_fields(params(b))), || format!("b = {b}, {t}: wrong target"))?;
    Ok(s)
}

fn closed_form_scripts() -> Check {
    let start = Instant::now();
    let (mut scripts, mut steps) = (0, 0);
    for b in 1..=4 {
        for t in oracles::all_targets(b, 3, 3, 3) {
            let s = planned(&t, b)?;
            verify_script(&s).map_err(|e| format!("b = {b}, {t}: {e}"))?;
            scripts += 1;
            steps += s.len();
        }
    }
    let t = start.elapsed();
    ensure(t < Duration::from_secs(300), || format!("took {t:.1?}"))?;
    Ok(format!("{scripts} scripts, {steps} steps, b = 1..4, in {t:.1?}"))
}

fn module_sampling() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut summary = Vec::new();
    for b in 1..=3 {
        let p = params(b);
        let mut words: Vec<GeneratorWord> = ["z", "z^2", "z^4", "y*z", "z*x0", "z^2*x0*y"]
            .iter()
            .map(|s| GeneratorWord::parse(p, s).unwrap())
            .collect();
        while words.len() < 56 {
            words.push(random_word(p, 4, &mut rng));
        }
        let with_z = words.iter().filter(|w| w.z_exponent() > 0).count();
        for w in &words {
            ensure(w.degree() <= 4, || format!("{w} too long"))?;
            let t = Target::Module { coefficient: w.clone() };
            verify_script(&planned(&t, b)?).map_err(|e| format!("b = {b}, {t}: {e}"))?;
        }
        summary.push(format!("b = {b}: {} words ({with_z} with z)", words.len()));
    }
    Ok(summary.join(", "))
}

fn decomposition() -> Check {
    let mut count = 0;
    for b in 1..=3 {
        let p = params(b);
        for e in oracles::all_vectors(12) {
            let algo = decompose_invariant(&ExponentVector(e), &p);
            if oracles::weight(e, b) != 0 {
                ensure(algo.is_err(), || format!("b = {b}: accepted non-invariant {e:?}"))?;
                continue;
            }
            let brute = oracles::brute_force_decompose(e, b);
            match algo {
                Ok(d) => ensure(d.to_word().lift_exponents() == ExponentVector(e), || format!("b = {b}: {e:?} unsound"))?,
                Err(err) => ensure(brute.is_none(), || format!("b = {b}: {e:?} failed ({err}), brute force succeeded"))?,
            }
            count += 1;
        }
    }
    Ok(format!("{count} invariant vectors of degree <= 12, b = 1..3"))
}

fn normal_forms() -> Check {
    let mut count = 0;
    for b in 1..=4 {
        let p = params(b);
        for w in oracles::x_words(p, 4) {
            let nf = x_normal_form(&w).map_err(|e| e.to_string())?;
            ensure(equals_mod_ideal(&nf.lift(), &w.lift(), &p), || format!("b = {b}: {w} -> {nf}"))?;
            count += 1;
        }
    }
    Ok(format!("{count} x-words of length <= 4, b = 1..4"))
}

fn flow() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let pairs = 20;
    for b in 1..=3 {
        let f = standard_fields(params(b));
        let phi = exp_lnd(&flow_field(&f), None).map_err(|e| e.to_string())?;
        ensure(phi.fixes_defining_polynomial_exactly(), || format!("b = {b}: F not fixed"))?;
        for i in 0..pairs {
            let x = random_tangent_field(&f, 2, &mut rng);
            let y = random_tangent_field(&f, 2, &mut rng);
            let push = |v: &Derivation| pushforward(&phi, v).map_err(|e| e.to_string());
            let lhs = push(&x.bracket(&y).map_err(|e| e.to_string())?)?;
            let rhs = push(&x)?.bracket(&push(&y)?).map_err(|e| e.to_string())?;
            ensure(lhs == rhs, || format!("b = {b}, pair {i}: bracket not preserved"))?;
        }
    }
    Ok(format!("F fixed, {pairs} bracket pairs each, b = 1..3"))
}

fn spanning() -> Check {
    let mut found = Vec::new();
    for n in 2..=5 {
        let w = find_spanning_point(SurfaceParameters::new(n).unwrap(), 100)
            .map_err(|e| e.to_string())?
            .ok_or_else(|| format!("n = {n}: no rank-2 point among 100 candidates"))?;
        ensure(w.rank == 2 && w.index < 100, || format!("n = {n}: bad witness"))?;
        found.push(format!("n = {n} at #{} {}", w.index, w.point));
    }
    Ok(found.join(", "))
}

/// `Σ g_ij (∂_j F ∂_i - ∂_i F ∂_j)`.
fn random_rotation_field<R: Rng>(b: u32, rng: &mut R) -> Derivation {
    let f = params(b).defining_polynomial();
    let mut coeffs: [Polynomial; 4] = Default::default();
    for (i, j) in [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)] {
        let g = random_polynomial(2, 2, rng);
        coeffs[i] += &(&g * &f.derivative(j));
        coeffs[j] -= &(&g * &f.derivative(i));
    }
    Derivation::new(params(b), coeffs)
}

fn property_suites() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for t in 0..50 {
        let b = rng.gen_range(1..=3);
        let [x, y, z] = [0; 3].map(|_| random_rotation_field(b, &mut rng));
        ensure(x.is_tangent() && y.is_tangent() && z.is_tangent(), || "non-tangent sample".into())?;
        let br = |a: &Derivation, c: &Derivation| a.bracket(c).unwrap();
        let sum = &(&br(&x, &br(&y, &z)) + &br(&y, &br(&z, &x))) + &br(&z, &br(&x, &y));
        ensure(sum.is_zero(), || format!("Jacobi fails on triple {t}"))?;
    }
    for t in 0..100 {
        let b = rng.gen_range(1..=4);
        let p = random_polynomial(5, 6, &mut rng);
        let expected = reduce(&p, &params(b)).into_inner();
        for s in 0..5 {
            ensure(oracles::stepwise_reduce(&p, b, &mut rng) == expected, || format!("confluence: poly {t}, shuffle {s}"))?;
        }
    }
    for t in 0..50 {
        let b = rng.gen_range(1..=3);
        let x = random_rotation_field(b, &mut rng);
        let (p, q) = (random_polynomial(3, 4, &mut rng), random_polynomial(3, 4, &mut rng));
        let lhs = x.apply(&(&p * &q));
        let rhs = &(&x.apply(&p) * &q) + &(&p * &x.apply(&q));
        ensure(lhs == rhs, || format!("Leibniz fails on sample {t}"))?;
    }
    Ok("Jacobi 50 triples, confluence 100 x 5 shuffles, Leibniz 50 samples".into())
}

fn mutation() -> Check {
    let targets = [
        (1, Target::XDelta { k: 0, n: 1 }),
        (2, Target::XDelta { k: 1, n: 2 }),
        (2, Target::XEps { m: 1, k: 1, n: 1 }),
        (2, Target::YEps { r: 0 }),
        (2, Target::YEps { r: 2 }),
        (3, Target::XEps { m: 0, k: 3, n: 0 }),
        (3, Target::Mixed { r: 1, m: 1, k: 2, n: 1 }),
        (3, Target::XDelta { k: 2, n: 3 }),
        (2, Target::Module { coefficient: GeneratorWord::parse(params(2), "z").unwrap() }),
        (4, Target::XEps { m: 2, k: 1, n: 2 }),
    ];
    for (b, t) in &targets {
        let s = planned(t, *b)?;
        verify_script(&s).map_err(|e| format!("{t}: {e}"))?;
        let step = (s.len() / 2..s.len())
            .chain(0..s.len() / 2)
            .find(|&i| !s.steps[i].claimed.is_zero())
            .ok_or_else(|| format!("{t}: all claims zero"))?;
        let m = oracles::flip_sign(&s, step).unwrap();
        match verify_script(&m) {
            Ok(()) => return Err(format!("b = {b}, {t}: mutation at step {step} accepted")),
            Err(e) => ensure(e.step == step, || format!("b = {b}, {t}: mutated {step}, failed at {}", e.step))?,
        }
    }
    Ok(format!("{} scripts, each rejected at the mutated step", targets.len()))
}

fn main() {
    let criteria: [Criterion; 12] = [
        ("verify --n 2..7 exits 0", verify_cli),
        ("function and commutation tables", function_tables),
        ("X_s chain closed form", x_chain),
        ("s1, s2 and their sum", delta_pair),
        ("membership scripts for closed-form targets", closed_form_scripts),
        ("module generator sampling", module_sampling),
        ("decompose_invariant vs brute force", decomposition),
        ("x_normal_form lift soundness", normal_forms),
        ("flow fixes F and preserves brackets", flow),
        ("spanning point search", spanning),
        ("property suites", property_suites),
        ("mutation soundness", mutation),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {why}", i + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
