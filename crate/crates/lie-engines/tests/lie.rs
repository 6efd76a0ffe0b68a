use exact_linalg::{q, qf, Exec, Q};
use lie_engines::*;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn expr(s: &str, w: usize) -> LieElement {
    lie_normal_form(&Expr::parse(s).unwrap(), &xy(), w).unwrap()
}

fn random_element(rng: &mut ChaCha8Rng, letters: usize, max_weight: usize) -> LieElement {
    let names: Vec<String> = (0..letters).map(|i| ((b'a' + i as u8) as char).to_string()).collect();
    let mut terms = Vec::new();
    for w in 1..=max_weight {
        for word in lyndon_words(letters, w) {
            if rng.gen_bool(0.5) {
                terms.push((word, qf(rng.gen_range(-3..=3), rng.gen_range(1..=2))));
            }
        }
    }
    LieElement::from_terms(&names, max_weight, terms).unwrap()
}

fn random_xy(rng: &mut ChaCha8Rng, max_weight: usize) -> LieElement {
    let mut terms = Vec::new();
    for w in 1..=max_weight {
        for word in lyndon_words(2, w) {
            terms.push((word, q(rng.gen_range(-2..=2))));
        }
    }
    LieElement::from_terms(&xy(), max_weight, terms).unwrap()
}

#[test]
fn lyndon_examples() {
    assert_eq!(lyndon_basis(&xy(), 3), vec![vec![0, 0, 1], vec![0, 1, 1]]);
    let e = expr("[x,[x,y]]", 4);
    assert_eq!(e.to_json().terms.get("xxy").map(String::as_str), Some("1"));
    assert!(expr("[x,x]", 4).is_zero());
}

#[test]
fn json_round_trip() {
    let e = expr("1/2*[x,[x,y]] - 3*[y,[x,y]] + y", 4);
    let s = serde_json::to_string(&e.to_json()).unwrap();
    let back: LieJson = serde_json::from_str(&s).unwrap();
    assert_eq!(LieElement::from_json(&back).unwrap(), e);
    let bad = LieJson { alphabet: xy(), max_weight: 3, terms: [("yx".to_string(), "1".to_string())].into_iter().collect() };
    assert!(matches!(LieElement::from_json(&bad), Err(LieError::NotLyndon(_))));
    let pa = p_alphabet(4);
    let p = LieElement::generator(&pa, 2, 0).bracket(&LieElement::generator(&pa, 2, pa.iter().position(|s| s == "p14").unwrap())).unwrap();
    let j = p.to_json();
    assert!(j.terms.contains_key("p12p14"), "{:?}", j.terms);
    assert_eq!(LieElement::from_json(&j).unwrap(), p);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn antisymmetry_and_jacobi(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_element(&mut rng, 3, 5);
        let b = random_element(&mut rng, 3, 5);
        let c = random_element(&mut rng, 3, 5);
        let ab = a.bracket(&b).unwrap();
        prop_assert_eq!(ab.add(&b.bracket(&a).unwrap()).unwrap().is_zero(), true);
        let j = a.bracket(&b.bracket(&c).unwrap()).unwrap()
            .add(&b.bracket(&c.bracket(&a).unwrap()).unwrap()).unwrap()
            .add(&c.bracket(&a.bracket(&b).unwrap()).unwrap()).unwrap();
        prop_assert!(j.is_zero());
    }

    #[test]
    fn braid_model_is_a_lie_algebra(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = TModel::t(4, 4);
        let pa = p_alphabet(4);
        let mut pick = || {
            let e = random_element(&mut rng, 6, 2);
            m.from_p(&LieElement::from_terms(&pa, 4, e.terms().clone()).unwrap()).unwrap()
        };
        let (a, b, c) = (pick(), pick(), pick());
        prop_assert!(m.add(&m.bracket(&a, &b), &m.bracket(&b, &a)).is_zero());
        let j = m.add(&m.add(&m.bracket(&a, &m.bracket(&b, &c)), &m.bracket(&b, &m.bracket(&c, &a))), &m.bracket(&c, &m.bracket(&a, &b)));
        prop_assert!(j.is_zero());
    }

    #[test]
    fn ihara_is_bilinear_and_antisymmetric(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (a, b, c) = (random_xy(&mut rng, 4), random_xy(&mut rng, 4), random_xy(&mut rng, 4));
        let ab = ihara_bracket(&a, &b, 5).unwrap();
        let ba = ihara_bracket(&b, &a, 5).unwrap();
        prop_assert!(ab.add(&ba).unwrap().is_zero());
        let lhs = ihara_bracket(&a.add(&c.scale(&q(2))).unwrap(), &b, 5).unwrap();
        let rhs = ab.axpy(&q(2), &ihara_bracket(&c, &b, 5).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert!(ihara_bracket(&a, &a, 5).unwrap().is_zero());
    }
}

#[test]
fn ihara_derivation_on_generators() {
    let xi = expr("[x,[x,y]]", 5);
    assert!(ihara_derivation(&xi, &expr("x", 5), 5).unwrap().is_zero());
    assert_eq!(ihara_derivation(&xi, &expr("y", 5), 5).unwrap(), expr("[y,[x,[x,y]]]", 5));
}

#[test]
fn ihara_bracket_of_three_and_five_solves_weight_eight() {
    let s3 = solve_grt(3, &ALL_EQUATIONS, Exec::default()).unwrap().remove(0);
    let s5 = solve_grt(5, &ALL_EQUATIONS, Exec::default()).unwrap().remove(0);
    let b = ihara_bracket(&s3.with_max_weight(8), &s5.with_max_weight(8), 8).unwrap();
    assert!(!b.is_zero());
    assert!(pentagon_defect(&b, 8).unwrap().is_zero());
    let (s2, s3) = symmetry_defects(&b, 8).unwrap();
    assert!(s2.is_zero() && s3.is_zero());
}

#[test]
fn solver_outputs_reverify() {
    for w in 2..=7 {
        for eqs in [&[Equation::Pentagon][..], &ALL_EQUATIONS[..]] {
            for psi in solve_grt(w, eqs, Exec::default()).unwrap() {
                assert!(pentagon_defect(&psi, w).unwrap().is_zero(), "w={w}");
                if eqs.len() == 3 {
                    let (s2, s3) = symmetry_defects(&psi, w).unwrap();
                    assert!(s2.is_zero() && s3.is_zero());
                }
            }
        }
    }
    let s3 = solve_grt(3, &ALL_EQUATIONS, Exec::Sequential).unwrap();
    assert_eq!(s3.len(), 1);
    // weight 3: proportional to [x,[x,y]] - [y,[x,y]]
    let ratio = s3[0].coefficient(&[0, 0, 1]) / s3[0].coefficient(&[0, 1, 1]);
    assert_eq!(ratio, q(-1));
}

#[test]
fn sequential_and_parallel_solver_agree() {
    for w in [3, 5, 6] {
        let a = solve_grt(w, &ALL_EQUATIONS, Exec::Sequential).unwrap();
        let b = solve_grt(w, &ALL_EQUATIONS, Exec::Parallel).unwrap();
        assert_eq!(a, b);
    }
}

#[test]
fn eulerian_examples() {
    let e2e3 = group_mul(&eulerian(2).unwrap(), &eulerian(3).unwrap());
    assert!(e2e3.is_empty());
    // [x,y] is antisymmetric, so e2 kills it
    assert!(eulerian_apply(2, &expr("[x,y]", 4)).unwrap().is_zero());
    assert!(!eulerian_apply(3, &expr("[x,y]", 4)).unwrap().is_zero());
    assert!(eulerian(4).is_err());
}

#[test]
fn eulerian_projectors_match_symmetry_equations() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let e2 = eulerian(2).unwrap();
    let one_minus_e2 = group_add(&group_identity(), &e2.iter().map(|(k, v)| (*k, -v)).collect());
    for _ in 0..100 {
        let psi = random_xy(&mut rng, 6);
        let (s2, _) = symmetry_defects(&psi, 6).unwrap();
        assert_eq!(s2, eulerian_apply(2, &psi).unwrap().scale(&q(2)));
        let anti = group_apply(&one_minus_e2, &psi).unwrap();
        assert!(eulerian_apply(2, &anti).unwrap().is_zero());
        let (a2, a3) = symmetry_defects(&anti, 6).unwrap();
        assert!(a2.is_zero());
        assert_eq!(a3, eulerian_apply(3, &anti).unwrap().scale(&q(3)));
        // e3 vanishes exactly when the three-term equation holds
        let e3 = eulerian_apply(3, &anti).unwrap();
        let fixed = anti.sub(&e3).unwrap();
        assert!(symmetry_defects(&fixed, 6).unwrap().1.is_zero());
    }
}

#[test]
fn permutation_action_matches_the_braid_model() {
    let m = TModel::p(3, 5);
    let alg = TAlg::<Q>::new(&m);
    let t = |i: usize, j: usize| m.generator::<Q>(i, j).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let perms: [[u8; 3]; 6] = [[1, 2, 3], [2, 1, 3], [1, 3, 2], [3, 2, 1], [2, 3, 1], [3, 1, 2]];
    for _ in 0..5 {
        let psi = random_xy(&mut rng, 5);
        for p in perms {
            let s = |k: usize| p[k - 1] as usize;
            let direct = psi.evaluate(&alg, &[t(s(1), s(2)), t(s(2), s(3))]);
            let mut direct = direct;
            m.normalize(&mut direct);
            let via = permute([p[0] - 1, p[1] - 1, p[2] - 1], &psi).evaluate(&alg, &[t(1, 2), t(2, 3)]);
            let mut via = via;
            m.normalize(&mut via);
            assert_eq!(direct, via, "{p:?}");
        }
    }
}
