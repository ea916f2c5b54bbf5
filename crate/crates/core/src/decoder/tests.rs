use super::*;
use crate::agcode::{catalog, gt};
use crate::groebner::{buchberger, vanishing_ideal};
use crate::poly::MonomialOrder;

fn e_vec(n: usize, plant: &[(usize, u32)]) -> Vec<Elem> {
    let mut e = vec![Elem::ZERO; n];
    for &(j, v) in plant {
        e[j] = Elem(v);
    }
    e
}

fn vanishing_basis(code: &CodeSpec, support: &[usize]) -> GroebnerBasis {
    let pts: Vec<Vec<Elem>> = support.iter().map(|&j| code.points()[j].clone()).collect();
    let g = vanishing_ideal(code.field(), code.order(), &pts).unwrap();
    assert_eq!(locate_errors(&g, code), support.to_vec());
    g
}

#[test]
fn line_single_error_gives_linear_locator() {
    let code = catalog::line_gf7();
    let f = code.field().clone();
    // point index j has coordinate j on the line over GF(7)
    let j = code.points().iter().position(|p| p[0] == Elem(5)).unwrap();
    let e = e_vec(7, &[(j, 2)]);
    let known = known_syndromes(&e, &code).unwrap();
    for z in known.region() {
        let k = z.as_slice()[0] as u64;
        assert_eq!(known.get(z), Some(f.mul(Elem(2), f.pow(Elem(5), k))));
    }
    let g = bms(&known, code.order()).unwrap();
    assert_eq!(g.len(), 1);
    let expected = MultiPoly::parse(&f, 1, "X1 - 5").unwrap();
    assert_eq!(g.polys()[0], expected);
}

#[test]
fn classical_berlekamp_massey_agrees_on_the_line() {
    // oracle: textbook BM over GF(7) on the 4 known syndromes
    fn classical(f: &crate::gf::Field, s: &[Elem]) -> Vec<Elem> {
        let mut c = vec![Elem::ONE];
        let mut b = vec![Elem::ONE];
        let (mut l, mut m, mut bb) = (0usize, 1usize, Elem::ONE);
        for n in 0..s.len() {
            let mut d = s[n];
            for i in 1..=l {
                d = f.add(d, f.mul(c[i], s[n - i]));
            }
            if d.is_zero() {
                m += 1;
                continue;
            }
            let coef = f.div(d, bb).unwrap();
            let t = c.clone();
            if c.len() < b.len() + m {
                c.resize(b.len() + m, Elem::ZERO);
            }
            for (i, &bi) in b.iter().enumerate() {
                c[i + m] = f.sub(c[i + m], f.mul(coef, bi));
            }
            if 2 * l <= n {
                l = n + 1 - l;
                b = t;
                bb = d;
                m = 1;
            } else {
                m += 1;
            }
        }
        c.truncate(l + 1);
        c.resize(l + 1, Elem::ZERO);
        c
    }
    let code = catalog::line_gf7();
    let f = code.field().clone();
    for j1 in 0..7 {
        for j2 in j1 + 1..7 {
            for v1 in 1..7 {
                for v2 in 1..7 {
                    let e = e_vec(7, &[(j1, v1), (j2, v2)]);
                    let known = known_syndromes(&e, &code).unwrap();
                    let s: Vec<Elem> = known.region().iter().map(|z| known.get(z).unwrap()).collect();
                    let conn = classical(&f, &s);
                    // connection polynomial C(z) = 1 + c1 z + ... ; locator is its reciprocal
                    let l = conn.len() - 1;
                    let mut rec = MultiPoly::zero(&f, 1);
                    for (i, &c) in conn.iter().enumerate() {
                        rec.add_term(c, Exponent::from(vec![(l - i) as u32]));
                    }
                    let rec = rec.monic(code.order()).unwrap();
                    let g = bms(&known, code.order()).unwrap();
                    assert_eq!(g.polys(), &[rec], "pattern {j1},{j2}");
                    assert_eq!(locate_errors(&g, &code), vec![j1, j2]);
                }
            }
        }
    }
}

#[test]
fn zero_syndromes_use_unit_convention() {
    let code = catalog::hermitian_gf4();
    let known = known_syndromes(&[Elem::ZERO; 8], &code).unwrap();
    let out = bms_run(&known, code.order()).unwrap();
    assert!(out.staircase.is_empty());
    assert!(out.basis.is_unit());
    assert!(locate_errors(&out.basis, &code).is_empty());
}

#[test]
fn hermitian_single_errors_match_vanishing_ideal() {
    let code = catalog::hermitian_gf4();
    for j in 0..8 {
        for v in 1..4 {
            let e = e_vec(8, &[(j, v)]);
            let known = known_syndromes(&e, &code).unwrap();
            let out = bms_run(&known, code.order()).unwrap();
            let oracle = vanishing_basis(&code, &[j]);
            assert!(out.basis.same_ideal(&oracle), "point {j}");
            assert_eq!(out.basis.delta_set(), oracle.delta_set());
            assert_eq!(out.staircase.len(), Some(1));
        }
    }
}

#[test]
fn bms_candidates_annihilate_the_known_region() {
    let code = catalog::hermitian_gf4();
    let f = code.field();
    for j1 in 0..8 {
        for j2 in j1 + 1..8 {
            let e = e_vec(8, &[(j1, 1), (j2, 3)]);
            let known = known_syndromes(&e, &code).unwrap();
            let mut st = BmsState::new(f, code.order());
            let mut prev = 0;
            for u in known.region() {
                st.step(u, &known).unwrap();
                let size = st.staircase().len().unwrap();
                assert!(size >= prev);
                prev = size;
            }
            for c in st.candidates() {
                let lead = c.leading_exponent(code.order()).unwrap();
                for z in known.region() {
                    let Some(t) = z.checked_sub(&lead) else { continue };
                    let needed: Option<Vec<Elem>> = c.terms().map(|(b, _)| known.get(&b.add(&t))).collect();
                    let Some(vals) = needed else { continue };
                    let acc = c.terms().zip(vals).fold(Elem::ZERO, |a, ((_, cf), v)| f.add(a, f.mul(cf, v)));
                    assert!(acc.is_zero());
                }
            }
        }
    }
}

#[test]
fn completion_reproduces_transform_beyond_region() {
    let code = catalog::hermitian_gf4();
    let f = code.field();
    for j in 0..8 {
        let e = e_vec(8, &[(j, 2)]);
        let known = known_syndromes(&e, &code).unwrap();
        let g = bms(&known, code.order()).unwrap();
        let bound = Exponent::from([4u32, 4]);
        let full = complete_syndromes(&g, &known, &bound).unwrap();
        assert_eq!(full, gt(&e, &code, &bound).unwrap());
        // closed form: v * X^a(P)
        for a in full.indices() {
            let mono = MultiPoly::eval_monomial(f, &a, &code.points()[j]);
            assert_eq!(full.get(&a), Some(f.mul(Elem(2), mono)));
        }
    }
}

#[test]
fn completion_with_unit_basis_is_zero() {
    let code = catalog::line_gf7();
    let known = known_syndromes(&[Elem::ZERO; 7], &code).unwrap();
    let g = GroebnerBasis::unit(code.field(), code.order());
    let s = complete_syndromes(&g, &known, &Exponent::from([6u32])).unwrap();
    assert!(s.is_zero());
}

#[test]
fn completion_rejects_delta_outside_region() {
    let code = catalog::line_gf7();
    let e = e_vec(7, &[(1, 1)]);
    let known = known_syndromes(&e, &code).unwrap();
    // Δ = {0..4} reaches past Z = {0..3}
    let g = buchberger(&[MultiPoly::parse(code.field(), 1, "X1^5").unwrap()], code.order()).unwrap();
    assert!(matches!(
        complete_syndromes(&g, &known, &Exponent::from([6u32])),
        Err(DecodeError::InitialDataOutsideZ(_))
    ));
}

#[test]
fn error_values_examples() {
    let code = catalog::line_gf7();
    let f = code.field();
    let bound = Exponent::from([0u32]);
    let e1 = TruncatedSeries::from_fn(f, &bound, |_| Elem(4));
    let v = solve_error_values(&[3], &e1, &code).unwrap();
    assert_eq!(v, e_vec(7, &[(3, 4)]));

    let plant = e_vec(7, &[(2, 5), (6, 1)]);
    let bound = Exponent::from([5u32]);
    let full = gt(&plant, &code, &bound).unwrap();
    assert_eq!(solve_error_values(&[2, 6], &full, &code).unwrap(), plant);

    let mut tampered = full.clone();
    let at = Exponent::from([4u32]);
    tampered.set(&at, f.add(full.get(&at).unwrap(), Elem::ONE));
    assert_eq!(solve_error_values(&[2, 6], &tampered, &code), Err(DecodeError::Inconsistent));
    assert_eq!(solve_error_values(&[9], &full, &code), Err(DecodeError::BadSupport(9)));
}

#[test]
fn rank_deficient_when_box_is_too_small() {
    let code = catalog::line_gf7();
    let plant = e_vec(7, &[(2, 5), (6, 1)]);
    let full = gt(&plant, &code, &Exponent::from([0u32])).unwrap();
    assert_eq!(solve_error_values(&[2, 6], &full, &code), Err(DecodeError::RankDeficient(2)));
}

#[test]
fn decode_codeword_is_trivial_success() {
    let code = catalog::hermitian_gf4();
    let c = code.encode(&[Elem(1), Elem(2), Elem(3)]).unwrap();
    let r = decode(&c, &code).unwrap();
    assert_eq!(r.status, DecodeStatus::Success);
    assert_eq!(r.codeword.as_deref(), Some(&c[..]));
    assert!(r.error.unwrap().iter().all(|x| x.is_zero()));
}

#[test]
fn decode_line_weight_one_exhaustive() {
    let code = catalog::line_gf7();
    let c = code.encode(&[Elem(3), Elem(0), Elem(6)]).unwrap();
    for j in 0..7 {
        for v in 1..7 {
            let e = e_vec(7, &[(j, v)]);
            let w: Vec<Elem> = c.iter().zip(&e).map(|(&a, &b)| code.field().add(a, b)).collect();
            let r = decode(&w, &code).unwrap();
            assert_eq!(r.status, DecodeStatus::Success);
            assert_eq!(r.error.as_ref(), Some(&e));
            assert_eq!(r.codeword.as_ref(), Some(&c));
            assert_eq!(r.locator.unwrap().polys()[0].leading_exponent(code.order()).unwrap(), Exponent::from([1u32]));
        }
    }
}

#[test]
fn decode_hermitian_weight_two_is_sound() {
    let code = catalog::hermitian_gf4();
    let f = code.field();
    let mut ok = 0;
    for j1 in 0..8 {
        for j2 in j1 + 1..8 {
            for v1 in 1..4 {
                for v2 in 1..4 {
                    let e = e_vec(8, &[(j1, v1), (j2, v2)]);
                    let r = decode(&e, &code).unwrap();
                    if r.is_success() {
                        let got = r.error.unwrap();
                        assert_eq!(got, e);
                        let zero: Vec<Elem> = (0..8).map(|_| Elem::ZERO).collect();
                        assert_eq!(r.codeword.unwrap(), zero);
                        ok += 1;
                    }
                    let _ = f;
                }
            }
        }
    }
    assert!(ok > 0);
}

#[test]
fn decode_rejects_wrong_length() {
    let code = catalog::line_gf7();
    assert!(decode(&[Elem(1)], &code).is_err());
}

#[test]
fn record_serializes_status_names() {
    let code = catalog::line_gf7();
    let r = decode(&e_vec(7, &[(4, 3)]), &code).unwrap();
    let rec = DecodeRecord::from_result(&r, &code);
    let s = serde_json::to_string(&rec).unwrap();
    assert!(s.contains("\"status\":\"SUCCESS\""));
    assert_eq!(rec.error_positions, vec![4]);
    assert_eq!(rec.error_values, vec![3]);
    assert_eq!(rec.locator_basis.len(), 1);
}

#[test]
fn order_mismatch_is_reported() {
    let code = catalog::hermitian_gf4();
    let known = known_syndromes(&[Elem::ZERO; 8], &code).unwrap();
    let other = MonomialOrder::graded(2);
    assert!(matches!(bms_run(&known, &other), Err(BmsError::OrderMismatch)));
}
