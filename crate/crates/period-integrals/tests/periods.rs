use exact_linalg::Exec;
use moduli_cohomology::Form;
use num_traits::ToPrimitive;
use period_integrals::*;
use polygon_combinatorics::{chords_of, enumerate, ChordDiagram, Filter};
use proptest::prelude::*;

fn zeta2() -> f64 {
    zeta_series(2, 100_000)
}

fn zeta3() -> f64 {
    zeta_series(3, 100_000)
}

fn diagram(n: usize, pairs: &[(usize, usize)]) -> ChordDiagram {
    ChordDiagram::from_pairs(n, pairs).unwrap().0
}

#[test]
fn series_oracles() {
    assert!((zeta2() - 1.6449340668).abs() < 1e-10);
    assert!((zeta3() - 1.2020569032).abs() < 1e-10);
}

#[test]
fn cross_ratios_on_interior_points() {
    for (n, free) in [(4, vec![0.3, 0.6]), (5, vec![0.1, 0.45, 0.8])] {
        let p = SimplexPoint::new(n, &free).unwrap();
        let u = u_values(n, &p).unwrap();
        assert_eq!(u.len(), chords_of(n).unwrap().len());
        assert!(u.values().all(|&x| 0.0 < x && x < 1.0), "{u:?}");
    }
    let p = SimplexPoint::new(4, &[0.5, 0.5 + 1e-11]).unwrap();
    assert!(matches!(u_values(4, &p), Err(PeriodError::Domain(_))));
    assert!(matches!(SimplexPoint::new(4, &[0.5]), Err(PeriodError::Dimension { .. })));
}

proptest! {
    #[test]
    fn cross_ratio_relations_hold(n in 4usize..=6, raw in proptest::collection::vec(0.001f64..0.999, 4)) {
        let mut free: Vec<f64> = raw[..n - 2].to_vec();
        free.sort_by(f64::total_cmp);
        prop_assume!(free.windows(2).all(|w| w[1] - w[0] > 1e-3));
        let p = SimplexPoint::new(n, &free).unwrap();
        for d in u_relation_defects(n, &p).unwrap() {
            prop_assert!(d.abs() < 1e-12, "{d}");
        }
        for x in u_values(n, &p).unwrap().values() {
            prop_assert!(0.0 < *x && *x < 1.0);
        }
    }
}

#[test]
fn pentagon_period_is_zeta_two() {
    let ps = prime_top_diagrams(4).unwrap();
    assert_eq!(ps, vec![diagram(4, &[(1, 3), (2, 4)])]);
    for m in [Method::Mc, Method::Stratified] {
        let e = integrate_period(&ps[0], m, &Budget::default()).unwrap();
        assert!(e.agrees_with(zeta2(), 3.0, 1e-3), "{m:?} {e:?}");
        assert!(!e.partial);
    }
}

#[test]
fn hexagon_periods_are_zeta_three() {
    let ps = prime_top_diagrams(5).unwrap();
    let want = [
        (diagram(5, &[(1, 3), (1, 4), (2, 5)]), -1.0),
        (diagram(5, &[(1, 3), (2, 4), (2, 5)]), -1.0),
        (diagram(5, &[(1, 4), (2, 4), (3, 5)]), 1.0),
        (diagram(5, &[(1, 4), (2, 5), (3, 5)]), 1.0),
    ];
    assert_eq!(ps, want.iter().map(|w| w.0.clone()).collect::<Vec<_>>());
    for m in [Method::Mc, Method::Stratified] {
        for (p, s) in &want {
            let e = integrate_period(p, m, &Budget::default()).unwrap();
            assert!(e.agrees_with(s * zeta3(), 3.0, 3e-3), "{m:?} {p} {e:?}");
        }
    }
}

#[test]
fn triangle_has_no_prime_top_diagrams() {
    assert!(period_map(3, Method::Mc, &Budget::default()).unwrap().is_empty());
    let not_prime = diagram(4, &[(1, 2), (1, 3)]);
    assert!(matches!(integrate_period(&not_prime, Method::Mc, &Budget::default()), Err(PeriodError::Diagram(_))));
    assert!(matches!(prime_top_diagrams(6), Err(PeriodError::Arity(6))));
}

#[test]
fn estimates_do_not_depend_on_workers() {
    let p = diagram(5, &[(1, 3), (1, 4), (2, 5)]);
    for m in [Method::Mc, Method::Stratified] {
        let a = integrate_period(&p, m, &Budget { samples: 20_000, exec: Exec::Sequential, seed: 9, ..Budget::default() }).unwrap();
        let b = integrate_period(&p, m, &Budget { samples: 20_000, exec: Exec::Parallel, seed: 9, ..Budget::default() }).unwrap();
        assert_eq!(a, b);
    }
}

#[test]
fn face_orientations() {
    let got: Vec<i8> = chords_of(5).unwrap().into_iter().map(|c| face_orientation(5, c).unwrap()).collect();
    assert_eq!(got, vec![-1, -1, -1, 1, -1, 1, -1, -1, 1]);
}

#[test]
fn stokes_relations_in_the_hexagon() {
    assert!(enumerate(4, 1, Filter::PrimeGravity).unwrap().is_empty());
    let ps = enumerate(5, 2, Filter::PrimeGravity).unwrap();
    assert_eq!(ps.len(), 5);
    let period = |f: &ChordDiagram| -> f64 {
        match f.arity {
            2 => 1.0,
            4 => zeta2(),
            _ => panic!("unexpected factor {f}"),
        }
    };
    for p in &ps {
        for m in [Method::Mc, Method::Stratified] {
            let r = stokes_defect(p, m, &Budget { samples: 100_000, ..Budget::default() }).unwrap();
            assert!(r.total.agrees_with(0.0, 3.0, 0.0), "{p} {m:?} {:?}", r.total);
            // each numerical face agrees with the regularised restriction
            let alg = boundary_terms(p).unwrap();
            assert_eq!(alg.len(), 2);
            for f in &r.faces {
                let predicted: f64 = alg
                    .iter()
                    .filter(|(c, _, _)| *c == f.chord)
                    .flat_map(|(_, o, t)| t.terms.iter().map(move |((a, b), x)| *o as f64 * x.to_f64().unwrap() * period(a) * period(b)))
                    .sum();
                assert!(f.estimate.agrees_with(predicted, 4.0, 1e-3), "{p} {} {predicted} {:?}", f.chord, f.estimate);
            }
        }
    }
    assert!(stokes_defect(&diagram(5, &[(1, 3), (1, 4), (2, 5)]), Method::Mc, &Budget::default()).is_err());
}

#[test]
fn cut_chords_of_the_diagram_drop_out() {
    let p = diagram(5, &[(1, 3), (2, 4)]);
    let f = Form::monomial(p.clone());
    for c in &p.chords {
        assert!(moduli_cohomology::reg_restrict(&f, *c).unwrap().is_zero());
    }
}

#[test]
fn reports_serialise() {
    let p = diagram(5, &[(1, 3), (2, 4)]);
    let r = stokes_defect(&p, Method::Stratified, &Budget { samples: 2_000, ..Budget::default() }).unwrap();
    let v: serde_json::Value = serde_json::to_value(&r).unwrap();
    assert_eq!(v["faces"].as_array().unwrap().len(), 9);
    assert_eq!(v["total"]["method"], "stratified");
    let back: PeriodEstimate = serde_json::from_value(v["total"].clone()).unwrap();
    assert_eq!(back, r.total);
}
