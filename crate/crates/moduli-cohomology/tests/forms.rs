use exact_linalg::{q, Q};
use moduli_cohomology::*;
use num_traits::One;
use polygon_combinatorics::{classify, enumerate, Chord, ChordDiagram, Filter};
use proptest::prelude::*;

fn ch(n: usize, i: usize, j: usize) -> Chord {
    Chord::new(n, i, j).unwrap()
}

fn mono(n: usize, pairs: &[(usize, usize)]) -> Form {
    let cs: Vec<Chord> = pairs.iter().map(|&(i, j)| ch(n, i, j)).collect();
    Form::product(n, &cs).unwrap()
}

fn tensor_of(outer: &Form, inner: &Form) -> TensorForm {
    let mut t = TensorForm::zero(outer.arity, inner.arity);
    t.add_product(&Q::one(), outer, inner);
    t
}

#[test]
fn pentagon_normal_form() {
    let f = mono(4, &[(1, 2), (2, 3)]);
    let want = mono(4, &[(1, 3), (2, 4)]);
    assert_eq!(normal_form(&f).unwrap(), want);
    assert_eq!(normal_form_with(&f, Engine::Relations).unwrap(), want);
}

#[test]
fn hexagon_cut_gives_pentagon_class() {
    let f = mono(5, &[(1, 3), (2, 4)]);
    let t = reg_restrict(&f, ch(5, 2, 3)).unwrap();
    assert_eq!(t, tensor_of(&mono(4, &[(1, 3), (2, 4)]), &Form::one(2)));
}

#[test]
fn small_cuts() {
    let c = ch(5, 2, 4);
    assert!(reg_restrict(&Form::alpha(5, c).unwrap(), c).unwrap().is_zero());
    assert_eq!(reg_restrict(&Form::one(5), c).unwrap(), tensor_of(&Form::one(3), &Form::one(3)));
    assert_eq!(residue(&Form::alpha(5, c).unwrap(), c).unwrap(), tensor_of(&Form::one(3), &Form::one(3)));
    assert!(residue(&mono(5, &[(1, 3)]), c).unwrap().is_zero());
}

#[test]
fn relation_space_sizes() {
    let r = relation_context(4, 2).unwrap();
    assert_eq!((r.dim(), r.rank(), r.quotient_dim()), (10, 4, 6));
    let r = relation_context(4, 1).unwrap();
    assert_eq!((r.rank(), r.quotient_dim()), (0, 5));
    let r = relation_context(5, 3).unwrap();
    assert_eq!(r.quotient_dim(), enumerate(5, 3, Filter::Gravity).unwrap().len());
}

#[test]
fn cap_is_reported() {
    let err = RelationContext::build(6, 3, 100).unwrap_err();
    assert_eq!(err, ModuliError::Cap { n: 6, degree: 3, size: 364, cap: 100 });
}

#[test]
fn dims_by_space() {
    let open: Vec<usize> = cohomology_dims(4, Space::Open, Engine::Relations).unwrap().iter().map(|r| r.computed).collect();
    assert_eq!(open, vec![1, 5, 6]);
    let dih = cohomology_dims(4, Space::Dihedral, Engine::Arnold).unwrap();
    assert_eq!(dih[2].computed, 1);
    let dih = cohomology_dims(5, Space::Dihedral, Engine::Arnold).unwrap();
    assert_eq!(dih[2].computed, 5);
}

#[test]
fn dims_agree_through_six() {
    for n in 2..=6 {
        for engine in [Engine::Relations, Engine::Arnold] {
            for space in [Space::Open, Space::Dihedral] {
                let rows = cohomology_dims(n, space, engine).unwrap();
                assert!(rows.iter().all(|r| r.enumerated == r.computed));
            }
        }
    }
}

#[test]
fn engines_agree_on_all_monomials_through_five() {
    for n in 3..=5 {
        for d in 1..=n - 2 {
            for m in enumerate(n, d, Filter::All).unwrap() {
                let f = Form::monomial(m);
                assert_eq!(normal_form_with(&f, Engine::Arnold).unwrap(), normal_form_with(&f, Engine::Relations).unwrap(), "{f}");
            }
        }
    }
}

#[test]
fn engines_agree_at_six() {
    for d in 1..=4 {
        for (k, m) in enumerate(6, d, Filter::All).unwrap().into_iter().enumerate() {
            if k % 7 != 0 {
                continue;
            }
            let f = Form::monomial(m);
            let a = normal_form_with(&f, Engine::Arnold).unwrap();
            assert_eq!(a, normal_form_with(&f, Engine::Relations).unwrap(), "{f}");
            let mut diff = f.clone();
            diff.add_scaled(&q(-1), &a);
            assert!(relation_context(6, d).unwrap().in_span(&diff).unwrap());
        }
    }
}

#[test]
fn relations_vanish() {
    for n in 3..=6 {
        for d in 2..=(n - 2).min(3) {
            for r in relation_vectors(n, d).unwrap() {
                assert!(normal_form(&r).unwrap().is_zero(), "{r}");
            }
        }
    }
}

#[test]
fn gravity_is_fixed_and_normal_form_idempotent() {
    for n in 3..=6 {
        for d in 0..=n - 2 {
            for g in enumerate(n, d, Filter::Gravity).unwrap() {
                let f = Form::monomial(g);
                assert_eq!(normal_form(&f).unwrap(), f);
            }
        }
    }
}

#[test]
fn residue_of_gravity_stays_gravity() {
    for n in 3..=6 {
        let cs = polygon_combinatorics::chords_of(n).unwrap();
        for d in 1..=n - 2 {
            for g in enumerate(n, d, Filter::Gravity).unwrap() {
                for &c in &cs {
                    let t = residue(&Form::monomial(g.clone()), c).unwrap();
                    for (o, i) in t.terms.keys() {
                        assert!(classify(o).is_gravity && classify(i).is_gravity, "{g} at {c}");
                    }
                }
            }
        }
    }
}

#[test]
fn pullback_of_pentagon_diagram() {
    let f = mono(4, &[(1, 3), (2, 4)]);
    let mut want = mono(5, &[(1, 4), (3, 5)]);
    want.add_scaled(&Q::one(), &mono(5, &[(2, 4), (3, 5)]));
    let p = pullback(&f, 1).unwrap();
    assert_eq!(p, want);
    assert_eq!(p.len(), 2);
    assert_eq!(pullback(&Form::one(4), 1).unwrap(), Form::one(5));
    assert_eq!(pullback(&f, 0).unwrap_err(), ModuliError::Side { i: 0, n: 4 });
}

#[test]
fn regularise_heptagon_example() {
    let f = mono(6, &[(1, 5), (1, 2), (4, 6)]);
    let g = normal_form(&f).unwrap();
    assert_eq!(g, f.clone());
    assert!(regularise(&g).is_zero());
    let cut = reg_restrict(&f, ch(6, 4, 5)).unwrap();
    assert_eq!(cut.inner_arity, 2);
    let mut outer = Form::zero(5, 3);
    for ((o, _), x) in &cut.terms {
        outer.add_term(o.clone(), x.clone());
    }
    let survivors = regularise(&normal_form(&outer).unwrap());
    assert_eq!(survivors.len(), 1);
    let house = mono(4, &[(1, 3), (2, 4)]);
    assert_eq!(regularise(&house), house);
}

#[test]
fn graded_cut_on_prime_input_is_reg() {
    for g in enumerate(5, 2, Filter::PrimeGravity).unwrap() {
        let f = Form::monomial(g);
        for c in polygon_combinatorics::chords_of(5).unwrap() {
            assert_eq!(graded_reg_restrict(&f, c).unwrap(), reg_restrict(&f, c).unwrap());
        }
    }
}

#[test]
fn graded_cut_kills_residual_chord() {
    let f = mono(6, &[(1, 2), (1, 5), (4, 6)]);
    assert!(graded_reg_restrict(&f, ch(6, 1, 2)).unwrap().is_zero());
}

#[test]
fn form_json_round_trip() {
    let mut f = mono(5, &[(1, 3), (2, 4)]);
    f.add_scaled(&exact_linalg::qf(-3, 2), &mono(5, &[(1, 3), (2, 5)]));
    let s = serde_json::to_string(&f).unwrap();
    let back: Form = serde_json::from_str(&s).unwrap();
    assert_eq!(back, f);
    let raw = r#"{"arity":4,"degree":2,"terms":[{"coeff":"1","chords":[[2,3],[1,2]]}]}"#;
    let g: Form = serde_json::from_str(raw).unwrap();
    assert_eq!(g, { let mut m = mono(4, &[(1, 2), (2, 3)]); m.scale(&q(-1)); m });
}

fn arb_monomial(nmin: usize, nmax: usize) -> impl Strategy<Value = ChordDiagram> {
    (nmin..=nmax).prop_flat_map(|n| {
        let cs = polygon_combinatorics::chords_of(n).unwrap();
        let m = cs.len();
        (Just(n), proptest::sample::subsequence((0..m).collect::<Vec<_>>(), 0..=(n - 2).min(m)))
    })
    .prop_map(|(n, idx)| {
        let cs = polygon_combinatorics::chords_of(n).unwrap();
        ChordDiagram::from_chords(n, idx.into_iter().map(|k| cs[k]).collect()).unwrap().0
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn reg_is_well_defined_on_cohomology(m in arb_monomial(4, 6), k in 0usize..20) {
        let cs = polygon_combinatorics::chords_of(m.arity).unwrap();
        let c = cs[k % cs.len()];
        let f = Form::monomial(m);
        prop_assert_eq!(reg_restrict(&f, c).unwrap(), reg_restrict(&normal_form(&f).unwrap(), c).unwrap());
    }

    #[test]
    fn reg_is_multiplicative(a in arb_monomial(5, 6), k in 0usize..20, split in 0usize..4) {
        let cs = polygon_combinatorics::chords_of(a.arity).unwrap();
        let c = cs[k % cs.len()];
        let split = split.min(a.chords.len());
        let (x, y) = a.chords.split_at(split);
        let xf = Form::product(a.arity, x).unwrap();
        let yf = Form::product(a.arity, y).unwrap();
        let whole = reg_monomial(&a, c).unwrap();
        let (rx, ry) = (reg_monomial(&xf.terms.keys().next().unwrap().clone(), c).unwrap(), reg_monomial(&yf.terms.keys().next().unwrap().clone(), c).unwrap());
        match (whole, rx, ry) {
            (None, _, _) => {}
            (Some((s, o, i)), Some((sx, ox, ix)), Some((sy, oy, iy))) => {
                let mut oc = ox.chords.clone(); oc.extend(oy.chords.iter().copied());
                let mut ic = ix.chords.clone(); ic.extend(iy.chords.iter().copied());
                let po = Form::product(o.arity, &oc).unwrap();
                let pi = Form::product(i.arity, &ic).unwrap();
                let koszul = if ix.degree() * oy.degree() % 2 == 1 { q(-1) } else { q(1) };
                let lhs = tensor_of(&Form::monomial(o), &Form::monomial(i));
                let mut lhs_s = TensorForm::zero(lhs.outer_arity, lhs.inner_arity);
                lhs_s.add_scaled(&s, &lhs);
                let mut rhs = TensorForm::zero(lhs.outer_arity, lhs.inner_arity);
                rhs.add_product(&(sx * sy * koszul), &po, &pi);
                prop_assert_eq!(lhs_s, rhs);
            }
            _ => prop_assert!(false, "factor killed but product survived"),
        }
    }

    #[test]
    fn reg_is_coassociative(m in arb_monomial(4, 6), a in 1usize..7, b in 0usize..7, len in 1usize..6, inner_len in 1usize..5) {
        let n = m.arity;
        // nested cuts c' inside c
        let i = 1 + (a - 1) % (n - 1);
        let j = (i + len).min(n);
        prop_assume!(j > i && !(i == 1 && j == n));
        let i2 = i + b % (j - i + 1);
        let j2 = (i2 + inner_len).min(j);
        prop_assume!(j2 > i2 && (i2, j2) != (i, j));
        let c = Chord::new(n, i, j).unwrap();
        let c2 = Chord::new(n, i2, j2).unwrap();
        let first = reg_monomial(&m, c).unwrap().and_then(|(s, o, inn)| {
            let local = Chord::new(inn.arity, i2 - i + 1, j2 - i + 1).unwrap();
            reg_monomial(&inn, local).unwrap().map(|(s2, io, ii)| (s * s2, o, io, ii))
        });
        let second = reg_monomial(&m, c2).unwrap().and_then(|(s, o, inn)| {
            let jj = j - (j2 - i2);
            let image = Chord::new(o.arity, i, jj).unwrap();
            reg_monomial(&o, image).unwrap().map(|(s2, oo, oi)| (s * s2, oo, oi, inn))
        });
        prop_assert_eq!(first, second);
    }

    #[test]
    fn residual_weight_never_grows(m in arb_monomial(4, 6)) {
        let w = residual_weight(&m);
        let f = normal_form(&Form::monomial(m)).unwrap();
        for d in f.terms.keys() {
            prop_assert!(residual_weight(d) <= w);
        }
    }
}

#[test]
fn octagon_star_is_not_a_relation() {
    let mut a = mono(7, &[(2, 5)]);
    a.add_scaled(&Q::one(), &mono(7, &[(4, 7)]));
    let mut b = mono(7, &[(1, 4)]);
    b.add_scaled(&Q::one(), &mono(7, &[(3, 6)]));
    assert!(!normal_form(&a.wedge(&b).unwrap()).unwrap().is_zero());
}
