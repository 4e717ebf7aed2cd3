mod support;

use dg_density::lie_engine::identities::bracket_expansion_holds;
use dg_density::lie_engine::sampling::{random_invariant, random_tangent_field};
use dg_density::lie_engine::standard_fields;
use dg_density::{exp_lnd, pushforward, Derivation, Polynomial, SurfaceParameters};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn params(b: u32) -> SurfaceParameters {
    SurfaceParameters::from_b(b).unwrap()
}

fn arb_poly(max_exp: u32, max_terms: usize) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec(([0..=max_exp, 0..=max_exp, 0..=max_exp, 0..=max_exp], -4i64..=4), 0..=max_terms)
        .prop_map(|ts| support::oracles::poly(&ts))
}

fn arb_field(b: u32) -> impl Strategy<Value = Derivation> {
    [arb_poly(2, 2), arb_poly(2, 2), arb_poly(2, 2), arb_poly(2, 2)].prop_map(move |cs| Derivation::new(params(b), cs))
}

/// `Σ g_ij (∂_j F ∂_i - ∂_i F ∂_j)`: tangent to the threefold for any `g_ij`.
fn arb_tangent_field(b: u32) -> impl Strategy<Value = Derivation> {
    prop::collection::vec(arb_poly(2, 2), 6).prop_map(move |gs| {
        let p = params(b);
        let f = p.defining_polynomial();
        let pairs = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
        let mut coeffs: [Polynomial; 4] = Default::default();
        for (g, &(i, j)) in gs.iter().zip(&pairs) {
            coeffs[i] += g * &f.derivative(j);
            coeffs[j] -= &(g * &f.derivative(i));
        }
        Derivation::new(p, coeffs)
    })
}

fn arb_b_field_triple() -> impl Strategy<Value = (Derivation, Derivation, Derivation)> {
    (1u32..=3).prop_flat_map(|b| (arb_tangent_field(b), arb_tangent_field(b), arb_tangent_field(b)))
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 50, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn jacobi((x, y, z) in arb_b_field_triple()) {
        prop_assert!(x.is_tangent() && y.is_tangent() && z.is_tangent());
        let t1 = x.bracket(&y.bracket(&z).unwrap()).unwrap();
        let t2 = y.bracket(&z.bracket(&x).unwrap()).unwrap();
        let t3 = z.bracket(&x.bracket(&y).unwrap()).unwrap();
        prop_assert!((&(&t1 + &t2) + &t3).is_zero());
    }

    #[test]
    fn bracket_is_antisymmetric((x, y, _) in arb_b_field_triple()) {
        prop_assert_eq!(x.bracket(&y).unwrap(), -&y.bracket(&x).unwrap());
    }

    #[test]
    fn leibniz(x in arb_field(2), f in arb_poly(3, 4), g in arb_poly(3, 4)) {
        let lhs = x.apply(&(&f * &g));
        let rhs = &(&f * &x.apply(&g)) + &(&g * &x.apply(&f));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn bracket_expansion(b in 1u32..=3, i in 0usize..3, j in 0usize..3, seed in any::<u64>()) {
        let fields = standard_fields(params(b));
        let basis = [&fields.delta, &fields.delta_prime, &fields.eps];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = random_invariant(params(b), 2, &mut rng);
        let g = random_invariant(params(b), 2, &mut rng);
        let (x, y) = (basis[i], basis[j]);
        // [fX, gY] = fg[X,Y] + f X(g) Y - g Y(f) X
        let lhs = x.times(&f).bracket(&y.times(&g)).unwrap();
        let rhs = &(&x.bracket(y).unwrap().times(&(&f * &g)) + &y.times(&(&f * &x.apply(&g))))
            - &x.times(&(&g * &y.apply(&f)));
        prop_assert_eq!(lhs, rhs);
        prop_assert!(bracket_expansion_holds(&f, x, &g, y).unwrap());
    }

    #[test]
    fn torus_field_kills_invariants(b in 1u32..=5, seed in any::<u64>()) {
        let fields = standard_fields(params(b));
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = random_invariant(params(b), 4, &mut rng);
        prop_assert!(fields.euler.apply_reduced(&f).is_zero());
    }

    #[test]
    fn flows_are_ring_automorphisms(b in 1u32..=3, p in arb_poly(3, 3), q in arb_poly(3, 3)) {
        let fields = standard_fields(params(b));
        for x in [&fields.delta, &fields.delta_prime] {
            let phi = exp_lnd(x, None).unwrap();
            let ps = params(b);
            prop_assert_eq!(phi.apply(&(&p * &q)), (&phi.apply(&p) * &phi.apply(&q)).reduced(&ps));
            prop_assert_eq!(phi.apply_inverse(&phi.apply(&p)), p.reduced(&ps));
        }
    }
}

#[test]
fn pushforward_preserves_brackets() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for b in 1..=2 {
        let fields = standard_fields(params(b));
        let flow = fields.delta.times(&dg_density::GeneratorWord::x_index(params(b), b).lift());
        let phi = exp_lnd(&flow, None).unwrap();
        for _ in 0..5 {
            let x = random_tangent_field(&fields, 1, &mut rng);
            let y = random_tangent_field(&fields, 1, &mut rng);
            let lhs = pushforward(&phi, &x.bracket(&y).unwrap()).unwrap();
            let rhs = pushforward(&phi, &x).unwrap().bracket(&pushforward(&phi, &y).unwrap()).unwrap();
            assert_eq!(lhs, rhs);
        }
    }
}
