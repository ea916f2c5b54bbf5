use proptest::prelude::*;

use keyeq::agcode::catalog;
use keyeq::decoder::{complete_syndromes, decode, locate_errors, solve_error_values, DecodeStatus};
use keyeq::{bms, gt, known_syndromes, vanishing_ideal, CodeSpec, Elem, Exponent};

fn add(code: &CodeSpec, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
    a.iter().zip(b).map(|(&x, &y)| code.field().add(x, y)).collect()
}

fn word(code: &CodeSpec, msg: &[u32], plant: &[(usize, u32)]) -> (Vec<Elem>, Vec<Elem>, Vec<Elem>) {
    let q = code.field().order();
    let m: Vec<Elem> = msg.iter().map(|&x| Elem(x % q)).collect();
    let c = code.encode(&m).unwrap();
    let mut e = vec![Elem::ZERO; code.len()];
    for &(j, v) in plant {
        e[j % code.len()] = Elem(1 + v % (q - 1));
    }
    let w = add(code, &c, &e);
    (c, e, w)
}

#[test]
fn syndromes_of_received_word_match_error() {
    for code in [catalog::line_gf7(), catalog::hermitian_gf4()] {
        let (_, e, w) = word(&code, &[1, 2, 3], &[(1, 4), (5, 2)]);
        assert_eq!(known_syndromes(&w, &code).unwrap(), known_syndromes(&e, &code).unwrap());
    }
}

#[test]
fn weight_two_locator_on_the_line() {
    let code = catalog::line_gf7();
    let (_, e, w) = word(&code, &[6, 6, 1], &[(2, 0), (4, 5)]);
    let known = known_syndromes(&w, &code).unwrap();
    let g = bms(&known, code.order()).unwrap();
    assert_eq!(locate_errors(&g, &code), vec![2, 4]);
    let bound = Exponent::from([9u32]);
    let full = complete_syndromes(&g, &known, &bound).unwrap();
    assert_eq!(full, gt(&e, &code, &bound).unwrap());
    assert_eq!(solve_error_values(&[2, 4], &full, &code).unwrap(), e);
}

#[test]
fn locate_errors_examples() {
    let code = catalog::hermitian_gf4();
    let pts = vec![code.points()[3].clone(), code.points()[7].clone()];
    let g = vanishing_ideal(code.field(), code.order(), &pts).unwrap();
    assert_eq!(locate_errors(&g, &code), vec![3, 7]);
    let unit = vanishing_ideal(code.field(), code.order(), &[]).unwrap();
    assert!(locate_errors(&unit, &code).is_empty());
}

#[test]
fn hermitian_weight_one_completion_beyond_region() {
    let code = catalog::hermitian_gf4();
    for j in 0..8 {
        let (_, e, w) = word(&code, &[3, 1, 2], &[(j, 2)]);
        let known = known_syndromes(&w, &code).unwrap();
        let g = bms(&known, code.order()).unwrap();
        let bound = Exponent::from([5u32, 5]);
        let full = complete_syndromes(&g, &known, &bound).unwrap();
        assert_eq!(full, gt(&e, &code, &bound).unwrap());
        // completion restricted to Z equals the known values
        for z in known.region() {
            assert_eq!(full.get(z), known.get(z));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn line_round_trip_within_radius(
        msg in prop::collection::vec(0u32..7, 3),
        plant in prop::collection::vec((0usize..7, 0u32..6), 0..=2),
    ) {
        let code = catalog::line_gf7();
        let (c, e, w) = word(&code, &msg, &plant);
        let r = decode(&w, &code).unwrap();
        prop_assert_eq!(r.status, DecodeStatus::Success);
        prop_assert_eq!(r.codeword.unwrap(), c);
        prop_assert_eq!(r.error.unwrap(), e);
    }

    #[test]
    fn hermitian_weight_one_round_trip(msg in prop::collection::vec(0u32..4, 3), j in 0usize..8, v in 0u32..3) {
        let code = catalog::hermitian_gf4();
        let (c, e, w) = word(&code, &msg, &[(j, v)]);
        let r = decode(&w, &code).unwrap();
        prop_assert_eq!(r.status, DecodeStatus::Success);
        prop_assert_eq!(r.codeword.unwrap(), c);
        prop_assert_eq!(r.error.unwrap(), e);
        let g = r.locator.unwrap();
        prop_assert_eq!(locate_errors(&g, &code), vec![j]);
    }

    /// Whatever the noise, a SUCCESS result is a codeword whose error explains the syndromes.
    #[test]
    fn success_is_always_verified(
        hermitian in any::<bool>(),
        noise in prop::collection::vec(0u32..7, 8),
    ) {
        let code = if hermitian { catalog::hermitian_gf4() } else { catalog::line_gf7() };
        let q = code.field().order();
        let w: Vec<Elem> = noise.iter().take(code.len()).map(|&x| Elem(x % q)).collect();
        let r = decode(&w, &code).unwrap();
        if r.status == DecodeStatus::Success {
            let c = r.codeword.unwrap();
            let e = r.error.unwrap();
            prop_assert!(code.is_codeword(&c).unwrap());
            prop_assert_eq!(add(&code, &c, &e), w.clone());
            prop_assert_eq!(known_syndromes(&e, &code).unwrap(), known_syndromes(&w, &code).unwrap());
            let g = r.locator.unwrap();
            let supp: Vec<usize> = (0..e.len()).filter(|&j| !e[j].is_zero()).collect();
            prop_assert_eq!(locate_errors(&g, &code), supp);
        }
    }
}
