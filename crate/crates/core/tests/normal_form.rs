mod support;

use dg_density::genring::x_normal_form;
use dg_density::polyring::equals_mod_ideal;
use dg_density::{GeneratorWord, SurfaceParameters};

use support::oracles::x_words;

#[test]
fn lift_sound_on_short_words() {
    for b in 1..=4 {
        let params = SurfaceParameters::from_b(b).unwrap();
        let words = x_words(params, 4);
        for w in &words {
            let nf = x_normal_form(w).unwrap();
            assert!(equals_mod_ideal(&nf.lift(), &w.lift(), &params), "b = {b}: {w} -> {nf}");
            assert_eq!(nf.to_word().degree(), w.degree());
            if let Some(h) = nf.h {
                assert!(h <= b);
            }
        }
    }
}

#[test]
fn word_count_for_b_2() {
    // multisets of size <= 2 from {x0, x1, x2}: 1 + 3 + 6
    let params = SurfaceParameters::new(3).unwrap();
    assert_eq!(x_words(params, 2).len(), 10);
}

#[test]
fn reference_reductions() {
    let params = SurfaceParameters::new(3).unwrap();
    let nf = |s| x_normal_form(&GeneratorWord::parse(params, s).unwrap()).unwrap().to_string();
    assert_eq!(nf("x1*x1"), "x0*x2");
    assert_eq!(nf("x0*x1*x2"), "x0*x1*x2");
}

#[test]
fn rejects_words_with_y_or_z() {
    let params = SurfaceParameters::new(3).unwrap();
    let w = GeneratorWord::parse(params, "y*x1").unwrap();
    assert!(x_normal_form(&w).is_err());
}
