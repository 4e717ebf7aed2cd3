mod support;

use dg_density::lie_engine::sampling::random_word;
use dg_density::lie_engine::{plan_membership, standard_fields, verify_script, MembershipScript, StepOp, Target};
use dg_density::polyring::int;
use dg_density::{Derivation, ExponentVector, GeneratorWord, SurfaceParameters};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use support::oracles::{all_targets, flip_sign};

fn params(b: u32) -> SurfaceParameters {
    SurfaceParameters::from_b(b).unwrap()
}

fn plan(target: &Target, b: u32) -> MembershipScript {
    let script = plan_membership(target, params(b)).unwrap();
    assert_eq!(script.target, target.field(&standard_fields(params(b))), "{target}");
    script
}

#[test]
fn every_target_in_small_box_verifies() {
    for b in 1..=3 {
        for t in all_targets(b, 2, 2, 2) {
            let s = plan(&t, b);
            if let Err(e) = verify_script(&s) {
                panic!("b = {b}, {t}: {e}");
            }
        }
    }
}

#[test]
fn module_words_with_z_powers_verify() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for b in 1..=3 {
        let p = params(b);
        let mut words: Vec<GeneratorWord> =
            ["z", "z^2", "y*z", "z^3*x0"].iter().map(|s| GeneratorWord::parse(p, s).unwrap()).collect();
        words.extend((0..10).map(|_| random_word(p, 4, &mut rng)));
        for w in words {
            let t = Target::Module { coefficient: w };
            let s = plan(&t, b);
            assert!(verify_script(&s).is_ok(), "b = {b}, {t}");
        }
    }
}

#[test]
fn json_round_trip_preserves_validity() {
    for t in all_targets(2, 1, 1, 1) {
        let s = plan(&t, 2);
        let back = MembershipScript::from_json(&s.to_json()).unwrap();
        assert_eq!(back, s);
        assert!(verify_script(&back).is_ok());
    }
}

#[test]
fn unsupported_targets_are_errors() {
    assert!(plan_membership(&Target::XDelta { k: 1, n: 0 }, params(2)).is_err());
    assert!(plan_membership(&Target::XEps { m: 0, k: 1, n: 0 }, params(2)).is_err());
    assert!(plan_membership(&Target::XEps { m: 0, k: 3, n: 1 }, params(2)).is_err());
}

#[test]
fn final_step_must_be_the_target() {
    let mut s = plan(&Target::XDelta { k: 0, n: 1 }, 2);
    s.target = s.target.scale(&int(2));
    let err = verify_script(&s).unwrap_err();
    assert_eq!(err.step, s.len() - 1);
}

#[test]
fn forward_references_are_rejected() {
    let mut s = plan(&Target::XDelta { k: 0, n: 1 }, 2);
    let last = s.len() - 1;
    s.steps[0].op = StepOp::Bracket { left: 0, right: last };
    assert_eq!(verify_script(&s).unwrap_err().step, 0);
}

fn arb_script() -> impl Strategy<Value = MembershipScript> {
    (1u32..=3).prop_flat_map(|b| {
        let targets = all_targets(b, 2, 2, 1);
        (Just(b), 0..targets.len()).prop_map(move |(b, i)| plan(&all_targets(b, 2, 2, 1)[i], b))
    })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn sign_flip_fails_at_mutated_step(s in arb_script(), pick in any::<prop::sample::Index>()) {
        let step = pick.index(s.len());
        if let Some(m) = flip_sign(&s, step) {
            let err = verify_script(&m).unwrap_err();
            prop_assert_eq!(err.step, step);
        }
    }

    #[test]
    fn extra_term_fails_at_mutated_step(s in arb_script(), pick in any::<prop::sample::Index>(), var in 0usize..4) {
        let step = pick.index(s.len());
        let claimed = &s.steps[step].claimed;
        let mut coeffs = claimed.coefficients().clone();
        // a2^7 is already reduced and absent from every planned claim
        coeffs[var].add_term(ExponentVector::new(0, 7, 0, 0), int(1));
        let mut m = s.clone();
        m.steps[step].claimed = Derivation::new(*claimed.params(), coeffs);
        prop_assume!(m.steps[step].claimed != s.steps[step].claimed);
        prop_assert_eq!(verify_script(&m).unwrap_err().step, step);
    }
}
