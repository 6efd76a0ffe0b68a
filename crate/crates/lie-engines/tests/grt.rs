use exact_linalg::Exec;
use lie_engines::*;

fn expr(s: &str, w: usize) -> LieElement {
    lie_normal_form(&Expr::parse(s).unwrap(), &xy(), w).unwrap()
}

#[test]
fn solver_dims_through_seven() {
    let pent: Vec<usize> = (2..=7).map(|w| solve_grt(w, &[Equation::Pentagon], Exec::default()).unwrap().len()).collect();
    assert_eq!(pent, vec![1, 1, 0, 1, 0, 1]);
    let all: Vec<usize> = (2..=7).map(|w| solve_grt(w, &ALL_EQUATIONS, Exec::default()).unwrap().len()).collect();
    assert_eq!(all, vec![0, 1, 0, 1, 0, 1]);
}

#[test]
fn commutator_passes_pentagon_and_only_the_two_term_symmetry() {
    let psi = expr("[x,y]", 6);
    assert!(pentagon_defect(&psi, 6).unwrap().is_zero());
    let (s2, s3) = symmetry_defects(&psi, 6).unwrap();
    // [x,y] is antisymmetric, so the two-term equation holds exactly
    assert!(s2.is_zero());
    assert_eq!(s3, expr("3*[x,y]", 6));
    assert!(pentagon_defect(&LieElement::zero(&xy(), 4), 4).unwrap().is_zero());
    assert!(!pentagon_defect(&expr("x", 4), 4).unwrap().is_zero());
}

#[test]
fn first_symmetry_of_a_linear_element() {
    let (s2, _) = symmetry_defects(&expr("x + y", 3), 3).unwrap();
    assert_eq!(s2, expr("2*x + 2*y", 3));
}
