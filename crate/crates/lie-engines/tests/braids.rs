use exact_linalg::{kernel_basis, q, SparseMatrix, SparseVec, Q};
use lie_engines::*;
use num_traits::One;

fn d_gen(n: usize, i: usize, j: usize, w: usize) -> LieElement {
    LieElement::generator(&d_alphabet(n), w, chord_index(n, i, j).unwrap())
}

fn rb_letter(m: &RbModel, name: &str) -> LieElement {
    let i = m.alphabet().iter().position(|a| a == name).unwrap();
    LieElement::generator(m.alphabet(), m.max_weight, i)
}

#[test]
fn structured_t_matches_presentation() {
    assert_eq!(TModel::t(3, 5).dims(), t_presented(3, 5).unwrap().dims());
    let oracle = t_presented(4, 5).unwrap().dims();
    assert_eq!(TModel::t(4, 5).dims(), oracle);
    assert_eq!(oracle, vec![6, 4, 10, 21, 54]);
}

#[test]
fn p_and_d_dims() {
    assert_eq!(TModel::p(4, 1).dims(), vec![5]);
    assert_eq!(chords(4).len(), 5);
    // d(3) is free on the two chords
    let dims = TModel::p(3, 6).dims();
    assert_eq!(dims, (1..=6).map(|w| witt(2, w)).collect::<Vec<_>>());
}

#[test]
fn rb_matches_t_plus_twists() {
    for n in 2..=4 {
        let rb = RbModel::new(n, 3).unwrap();
        let t = TModel::t(n, 3).dims();
        assert_eq!(rb.dims(), vec![t[0] + n, t[1], t[2]], "rb({n})");
    }
    assert!(matches!(RbModel::new(5, 2), Err(LieError::Cap(_))));
    assert!(matches!(RbModel::new(3, 4), Err(LieError::Cap(_))));
}

#[test]
fn chord_and_braid_coordinates_round_trip() {
    let e = d_gen(3, 1, 2, 3);
    assert_eq!(p_to_d(3, &d_to_p(3, &e).unwrap()).unwrap(), e);

    let m = TModel::p(4, 3);
    let pa = p_alphabet(4);
    let p12 = LieElement::generator(&pa, 3, 0);
    let back = d_to_p(4, &p_to_d(4, &p12).unwrap()).unwrap();
    assert_eq!(m.from_p(&back).unwrap(), m.from_p(&p12).unwrap());

    // Σ_{i<=r<s<=j} p_rs written in chords telescopes to δ_ij
    for (i, j) in chords(4) {
        let mut acc = LieElement::zero(&pa, 2);
        for r in i..=j {
            for s in r + 1..=j {
                let k = pairs(4).iter().position(|&p| p == (r, s)).unwrap();
                acc = acc.add(&LieElement::generator(&pa, 2, k)).unwrap();
            }
        }
        assert_eq!(p_to_d(4, &acc).unwrap(), d_gen(4, i, j, 2), "chord {i}{j}");
    }

    // brackets survive the round trip through the model
    let e = d_gen(4, 1, 3, 3).bracket(&d_gen(4, 2, 4, 3)).unwrap();
    let x = m.from_d(&e).unwrap();
    assert_eq!(m.from_d(&m.to_d(&x).unwrap()).unwrap(), x);
}

#[test]
fn gamma_and_pi_on_generators() {
    let rb = RbModel::new(3, 2).unwrap();
    let g = rb.gamma(&d_gen(3, 1, 2, 2)).unwrap();
    let want = rb_letter(&rb, "b12").add(&rb_letter(&rb, "s1")).unwrap().add(&rb_letter(&rb, "s2")).unwrap();
    assert_eq!(g, rb.normal_form(&want).unwrap());
    for k in 1..=3 {
        assert!(rb.pi(&rb_letter(&rb, &format!("s{k}"))).unwrap().is_zero());
    }
    let rb4 = RbModel::new(4, 2).unwrap();
    let m = TModel::p(4, 2);
    let d13 = d_gen(4, 1, 3, 2);
    assert_eq!(rb4.pi(&rb4.gamma(&d13).unwrap()).unwrap(), m.from_d(&d13).unwrap());
}

fn brackets_up_to_three(n: usize, w: usize) -> Vec<LieElement> {
    let gens: Vec<LieElement> = chords(n).into_iter().map(|(i, j)| d_gen(n, i, j, w)).collect();
    let mut out = gens.clone();
    for a in &gens {
        for b in &gens {
            let ab = a.bracket(b).unwrap();
            out.push(ab.clone());
            for c in &gens {
                out.push(c.bracket(&ab).unwrap());
            }
        }
    }
    out
}

#[test]
fn pi_gamma_is_identity_through_weight_three() {
    for n in 3..=4 {
        let rb = RbModel::new(n, 3).unwrap();
        let m = TModel::p(n, 3);
        for e in brackets_up_to_three(n, 3) {
            assert_eq!(rb.pi(&rb.gamma(&e).unwrap()).unwrap(), m.from_d(&e).unwrap());
        }
    }
}

/// Kernel of `Lie(chords)_w → d(n)`, i.e. the relations of `d(n)` in weight `w`.
fn d_relations(n: usize, w: usize) -> Vec<LieElement> {
    let da = d_alphabet(n);
    let m = TModel::p(n, w);
    let words = lyndon_words(da.len(), w);
    let cols: Vec<_> = words
        .iter()
        .map(|wd| m.flat(&m.from_d(&LieElement::from_terms(&da, w, [(wd.clone(), Q::one())]).unwrap()).unwrap()))
        .collect();
    let mut keys = std::collections::BTreeMap::new();
    for c in &cols {
        for k in c.keys() {
            let l = keys.len();
            keys.entry(k.clone()).or_insert(l);
        }
    }
    let mut rows = vec![Vec::new(); keys.len()];
    for (j, c) in cols.iter().enumerate() {
        for (k, x) in c {
            rows[keys[k]].push((j, x.clone()));
        }
    }
    let rows: Vec<SparseVec> = rows.into_iter().map(|r| SparseVec::from_pairs(words.len(), r).unwrap()).collect();
    let mat = SparseMatrix::from_rows(words.len(), rows).unwrap();
    kernel_basis(&mat)
        .into_iter()
        .map(|v| LieElement::from_terms(&da, w, v.entries().iter().map(|(j, x)| (words[*j].clone(), x.clone()))).unwrap())
        .collect()
}

#[test]
fn pi_and_gamma_are_morphisms() {
    for n in 3..=4 {
        let rb = RbModel::new(n, 3).unwrap();
        let m = TModel::p(n, 3);
        for r in rb.relations().unwrap() {
            assert!(rb.pi(&r.with_max_weight(3)).unwrap().is_zero());
        }
        let gens: Vec<(String, LieElement)> = rb.generators();
        for (_, a) in &gens {
            for (_, b) in &gens {
                let lhs = rb.pi(&rb.bracket(a, b).unwrap()).unwrap();
                let rhs = m.bracket(&rb.pi(a).unwrap(), &rb.pi(b).unwrap());
                assert_eq!(lhs, rhs);
            }
        }
        for w in 2..=3 {
            let rels = d_relations(n, w);
            // d(3) is free
            assert_eq!(rels.is_empty(), n == 3);
            for r in rels {
                assert!(rb.is_zero(&rb.gamma(&r).unwrap()).unwrap(), "n={n} w={w}");
            }
        }
    }
}

#[test]
fn gamma_kills_twists_on_depth_two() {
    let rb = RbModel::new(3, 3).unwrap();
    let psi = lie_normal_form(&Expr::parse("[x,y] + 2*[x,[x,y]] - [y,[x,y]]").unwrap(), &xy(), 3).unwrap();
    let d = psi.substitute(&[d_gen(3, 1, 2, 3), d_gen(3, 2, 3, 3)]).unwrap();
    let lhs = rb.gamma(&d).unwrap();
    let rhs = psi.substitute(&[rb_letter(&rb, "b12"), rb_letter(&rb, "b23")]).unwrap();
    assert_eq!(lhs, rb.normal_form(&rhs).unwrap());
}

#[test]
fn cabled_twist_is_gamma_of_a_chord() {
    for m in 2..=4 {
        let rb = RbModel::new(m, 1).unwrap();
        assert_eq!(cabled_twist(m).unwrap(), rb.gamma_letter(1, m).unwrap(), "m={m}");
    }
}

#[test]
fn gluing_reindexes_chords() {
    let e = dihedral_action(3, 2, &d_gen(3, 1, 2, 1)).unwrap();
    assert_eq!(e, d_gen(4, 1, 3, 1));
    assert_eq!(dihedral_action(3, 0, &d_gen(3, 1, 2, 1)).unwrap(), d_gen(4, 2, 3, 1));
    assert_eq!(dihedral_action(3, 4, &d_gen(3, 2, 3, 1)).unwrap(), d_gen(4, 2, 3, 1));
    assert!(dihedral_action(3, 5, &d_gen(3, 1, 2, 1)).is_err());
}

#[test]
fn coboundary_of_psi_is_the_pentagon_cocycle() {
    let m = TModel::p(4, 5);
    for s in ["[x,y]", "[x,[x,y]]", "[x,[x,[x,y]]] - 2*[y,[x,[x,y]]]", "x + [y,[x,y]]"] {
        let psi = lie_normal_form(&Expr::parse(s).unwrap(), &xy(), 5).unwrap();
        let d = psi.substitute(&[d_gen(3, 1, 2, 5), d_gen(3, 2, 3, 5)]).unwrap();
        let cob = m.from_d(&dihedral_coboundary(3, &d).unwrap()).unwrap();
        assert_eq!(cob, pentagon_d_form(&psi, 5).unwrap(), "{s}");
    }
    let psi = lie_normal_form(&Expr::parse("[x,y]").unwrap(), &xy(), 4).unwrap();
    let d = psi.substitute(&[d_gen(3, 1, 2, 4), d_gen(3, 2, 3, 4)]).unwrap();
    assert!(m.from_d(&dihedral_coboundary(3, &d).unwrap()).unwrap().is_zero());
}

#[test]
fn discrepancy_is_the_adjacent_chord() {
    for n in 2..=4 {
        for i in 1..=n {
            let adj = LieElement::generator(&d_alphabet(n + 1), 1, chord_index(n + 1, i, i + 1).unwrap());
            for (name, v) in discrepancy(n, i).unwrap() {
                let b = |u: usize, v: usize| u >= 1 && name == format!("b{u}{v}");
                let want = if name == format!("s{i}") || b(i.wrapping_sub(1), i + 1) {
                    adj.clone()
                } else if b(i.wrapping_sub(1), i) || b(i, i + 1) {
                    adj.scale(&q(-1))
                } else {
                    LieElement::zero(&d_alphabet(n + 1), 1)
                };
                assert_eq!(v, want, "n={n} i={i} {name}");
            }
        }
    }
}

#[test]
fn literal_chord_relations_fall_short() {
    assert_eq!(literal_d_diagnostics(3, 3).unwrap(), (vec![2, 1, 2], vec![2, 1, 2]));
    assert_eq!(literal_d_diagnostics(4, 3).unwrap(), (vec![5, 7, 25], vec![5, 4, 10]));
}
