//! The pentagon and symmetry equations on `ψ ∈ Lie(x, y)`, and the solver
//! for their weight-graded solution spaces.

use std::collections::BTreeMap;

use exact_linalg::exec::{self, Exec};
use exact_linalg::{kernel_basis, q, qf, SparseMatrix, SparseVec, Q};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::braid::{TAlg, TElement, TModel};
use crate::free::{alphabet, evaluate_words, LieElement};
use crate::lyndon::lyndon_words;
use crate::word::{self, Word};
use crate::LieError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Equation {
    Pentagon,
    Sym2,
    Sym3,
}

pub const ALL_EQUATIONS: [Equation; 3] = [Equation::Pentagon, Equation::Sym2, Equation::Sym3];

pub fn xy() -> Vec<String> {
    alphabet(&["x", "y"])
}

fn gen_sum<C: word::Coeff>(m: &TModel, gens: &[(usize, usize)]) -> TElement<C> {
    let mut acc = m.zero();
    for &(i, j) in gens {
        m.add_scaled_c(&mut acc, &C::one(), &m.generator(i, j).unwrap());
    }
    acc
}

/// The five `(x, y)` substitutions of the pentagon in `t(4)`, signed so the
/// sum is LHS - RHS of
/// `ψ(t12, t23+t24) + ψ(t13+t23, t34) = ψ(t23, t34) + ψ(t12+t13, t24+t34) + ψ(t12, t23)`.
fn t_form_points<C: word::Coeff>(m: &TModel) -> Vec<(i64, TElement<C>, TElement<C>)> {
    vec![
        (1, gen_sum(m, &[(1, 2)]), gen_sum(m, &[(2, 3), (2, 4)])),
        (1, gen_sum(m, &[(1, 3), (2, 3)]), gen_sum(m, &[(3, 4)])),
        (-1, gen_sum(m, &[(2, 3)]), gen_sum(m, &[(3, 4)])),
        (-1, gen_sum(m, &[(1, 2), (1, 3)]), gen_sum(m, &[(2, 4), (3, 4)])),
        (-1, gen_sum(m, &[(1, 2)]), gen_sum(m, &[(2, 3)])),
    ]
}

/// `δ_ij` in the `p(4)` model.
fn delta<C: word::Coeff>(m: &TModel, i: usize, j: usize) -> TElement<C> {
    let mut gens = Vec::new();
    for r in i..=j {
        for s in r + 1..=j {
            gens.push((r, s));
        }
    }
    let mut e = gen_sum(m, &gens);
    m.normalize(&mut e);
    e
}

/// The five-term cocycle `ψ(δ23,δ34) - ψ(δ13,δ34) + ψ(δ13,δ24) - ψ(δ12,δ24) + ψ(δ12,δ23)`.
fn d_form_points<C: word::Coeff>(m: &TModel) -> Vec<(i64, TElement<C>, TElement<C>)> {
    vec![
        (1, delta(m, 2, 3), delta(m, 3, 4)),
        (-1, delta(m, 1, 3), delta(m, 3, 4)),
        (1, delta(m, 1, 3), delta(m, 2, 4)),
        (-1, delta(m, 1, 2), delta(m, 2, 4)),
        (1, delta(m, 1, 2), delta(m, 2, 3)),
    ]
}

fn check_xy(psi: &LieElement) -> Result<(), LieError> {
    if psi.alphabet != xy() {
        return Err(LieError::Alphabet);
    }
    Ok(())
}

fn evaluate_points(m: &TModel, psi: &LieElement, points: Vec<(i64, TElement<Q>, TElement<Q>)>) -> TElement<Q> {
    let alg = TAlg::<Q>::new(m);
    let mut acc = m.zero();
    for (s, a, b) in points {
        let v = psi.evaluate(&alg, &[a, b]);
        m.add_scaled_c(&mut acc, &q(s), &v);
    }
    m.normalize(&mut acc);
    acc
}

/// Pentagon in the standard `t(4)` form, LHS - RHS.
pub fn pentagon_t_form(psi: &LieElement, max_weight: usize) -> Result<TElement<Q>, LieError> {
    check_xy(psi)?;
    let m = TModel::t(4, max_weight);
    Ok(evaluate_points(&m, psi, t_form_points(&m)))
}

/// The five-term cocycle in chord coordinates, evaluated in `p(4)`.
pub fn pentagon_d_form(psi: &LieElement, max_weight: usize) -> Result<TElement<Q>, LieError> {
    check_xy(psi)?;
    let m = TModel::p(4, max_weight);
    Ok(evaluate_points(&m, psi, d_form_points(&m)))
}

/// Pentagon defect as an element of the `p(4)` model (the chord-coordinate
/// cocycle). The standard `t(4)` form is computed as well and the two are
/// checked to agree up to the overall sign in every weight >= 2. In weight 1
/// they differ because commuting generators can only be dropped inside
/// brackets.
pub fn pentagon_defect(psi: &LieElement, max_weight: usize) -> Result<TElement<Q>, LieError> {
    let d = pentagon_d_form(psi, max_weight)?;
    let t = pentagon_t_form(psi, max_weight)?;
    let m = TModel::p(4, max_weight);
    let mut hi_d = m.zero::<Q>();
    let mut hi_t = m.zero::<Q>();
    for w in 2..=max_weight {
        hi_d = m.add(&hi_d, &d.weight_part(w));
        hi_t = m.add(&hi_t, &t.weight_part(w));
    }
    if !m.add(&hi_d, &hi_t).is_zero() {
        return Err(LieError::Mismatch("pentagon chord form and t(4) form disagree".into()));
    }
    Ok(d)
}

fn xy_images(psi: &LieElement, sub: &[(i64, i64); 2]) -> [LieElement; 2] {
    // (a, b) encodes a*x + b*y with the convention a,b in {-1,0,1}
    let a = xy();
    let w = psi.max_weight;
    let x = LieElement::generator(&a, w, 0);
    let y = LieElement::generator(&a, w, 1);
    let mk = |(p, s): (i64, i64)| x.scale(&q(p)).axpy(&q(s), &y).unwrap();
    [mk(sub[0]), mk(sub[1])]
}

fn sub_xy(psi: &LieElement, sub: &[(i64, i64); 2]) -> LieElement {
    psi.substitute(&xy_images(psi, sub)).expect("two letters")
}

/// `(ψ(x,y) + ψ(y,x), ψ(x,y) + ψ(y,-x-y) + ψ(-x-y,x))`.
pub fn symmetry_defects(psi: &LieElement, max_weight: usize) -> Result<(LieElement, LieElement), LieError> {
    check_xy(psi)?;
    let psi = psi.with_max_weight(max_weight.min(psi.max_weight));
    let swap = sub_xy(&psi, &[(0, 1), (1, 0)]);
    let s2 = psi.add(&swap)?;
    let r1 = sub_xy(&psi, &[(0, 1), (-1, -1)]);
    let r2 = sub_xy(&psi, &[(-1, -1), (1, 0)]);
    let s3 = psi.add(&r1)?.add(&r2)?;
    Ok((s2, s3))
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Key {
    Pentagon(usize, Word),
    Sym(u8, Word),
}

/// Basis of the weight-`w` solutions of the chosen equations, as kernel
/// vectors over the Lyndon basis of `Lie(x, y)_w`.
pub fn solve_grt(w: usize, equations: &[Equation], exec: Exec) -> Result<Vec<LieElement>, LieError> {
    if w == 0 {
        return Err(LieError::Index("weight must be positive".into()));
    }
    let a = xy();
    let basis = lyndon_words(2, w);
    let mut columns: Vec<BTreeMap<Key, Q>> = vec![BTreeMap::new(); basis.len()];

    if equations.contains(&Equation::Pentagon) {
        let m = TModel::t(4, w);
        let points = t_form_points::<i64>(&m);
        let per_point: Vec<Vec<TElement<i64>>> = exec::map(exec, &points, |(_, x, y)| {
            let alg = TAlg::<i64>::new(&m);
            evaluate_words(&alg, &basis, &[x.clone(), y.clone()])
        });
        for (j, col) in columns.iter_mut().enumerate() {
            let mut acc = m.zero::<i64>();
            for ((s, _, _), vals) in points.iter().zip(&per_point) {
                m.add_scaled_c(&mut acc, s, &vals[j]);
            }
            for ((f, wd), c) in m.flat(&acc.weight_part(w)) {
                col.insert(Key::Pentagon(f, wd), c);
            }
        }
    }
    let sym: Vec<(u8, Equation)> = vec![(2, Equation::Sym2), (3, Equation::Sym3)];
    for (tag, eq) in sym {
        if !equations.contains(&eq) {
            continue;
        }
        let defects: Vec<LieElement> = exec::map(exec, &basis, |wd| {
            let psi = LieElement::from_terms(&a, w, [(wd.clone(), Q::one())]).unwrap();
            let (s2, s3) = symmetry_defects(&psi, w).unwrap();
            if tag == 2 {
                s2
            } else {
                s3
            }
        });
        for (col, d) in columns.iter_mut().zip(defects) {
            for (wd, c) in d.terms() {
                col.insert(Key::Sym(tag, wd.clone()), c.clone());
            }
        }
    }

    let mut keys: BTreeMap<Key, usize> = BTreeMap::new();
    for col in &columns {
        for k in col.keys() {
            let n = keys.len();
            keys.entry(k.clone()).or_insert(n);
        }
    }
    let mut rows: Vec<Vec<(usize, Q)>> = vec![Vec::new(); keys.len()];
    for (j, col) in columns.iter().enumerate() {
        for (k, c) in col {
            rows[keys[k]].push((j, c.clone()));
        }
    }
    let rows: Vec<SparseVec> = rows.into_iter().map(|r| SparseVec::from_pairs(basis.len(), r).unwrap()).collect();
    let mat = SparseMatrix::from_rows(basis.len(), rows).map_err(|e| LieError::Mismatch(e.to_string()))?;
    let kernel = kernel_basis(&mat);
    Ok(kernel
        .into_iter()
        .map(|v| LieElement::from_terms(&a, w, v.entries().iter().map(|(j, c)| (basis[*j].clone(), c.clone()))).unwrap())
        .collect())
}

/// `{ψ, φ} = D_ψ(φ) - D_φ(ψ) + [ψ, φ]` with `D_ξ(x) = 0`, `D_ξ(y) = [y, ξ]`.
pub fn ihara_bracket(psi: &LieElement, phi: &LieElement, max_weight: usize) -> Result<LieElement, LieError> {
    check_xy(psi)?;
    check_xy(phi)?;
    let w = max_weight;
    let d_psi_phi = ihara_derivation(psi, phi, w)?;
    let d_phi_psi = ihara_derivation(phi, psi, w)?;
    let br = psi.with_max_weight(w).bracket(&phi.with_max_weight(w))?;
    d_psi_phi.sub(&d_phi_psi)?.add(&br)
}

/// `D_ξ(η)`.
pub fn ihara_derivation(xi: &LieElement, eta: &LieElement, max_weight: usize) -> Result<LieElement, LieError> {
    check_xy(xi)?;
    check_xy(eta)?;
    let ya = word::letter::<Q>(1);
    let img = word::commutator(&ya, &xi.to_assoc(), max_weight);
    let p = word::derive(&eta.to_assoc(), &|a| (a == 1).then(|| img.clone()), max_weight);
    LieElement::from_assoc(&xy(), max_weight, &p)
}

/// Element of the group algebra `Q[S3]`; a permutation is the image list of
/// `(1, 2, 3)`, zero-based.
pub type GroupElement = BTreeMap<[u8; 3], Q>;

pub fn perm(images: [u8; 3]) -> [u8; 3] {
    [images[0] - 1, images[1] - 1, images[2] - 1]
}

fn ge(terms: &[([u8; 3], i64)], denom: i64) -> GroupElement {
    let mut out = GroupElement::new();
    for (p, c) in terms {
        *out.entry(perm(*p)).or_insert_with(Q::zero) += qf(*c, denom);
    }
    out.retain(|_, c| !c.is_zero());
    out
}

pub const ID: [u8; 3] = [1, 2, 3];
pub const S12: [u8; 3] = [2, 1, 3];
pub const S23: [u8; 3] = [1, 3, 2];
pub const S13: [u8; 3] = [3, 2, 1];
pub const C123: [u8; 3] = [2, 3, 1];
pub const C132: [u8; 3] = [3, 1, 2];

/// The Eulerian idempotents of arity 3.
pub fn eulerian(k: usize) -> Result<GroupElement, LieError> {
    Ok(match k {
        1 => ge(&[(ID, 2), (S12, 1), (S23, 1), (C123, -1), (C132, -1), (S13, -2)], 6),
        2 => ge(&[(ID, 1), (S13, 1)], 2),
        3 => ge(&[(ID, 1), (S12, -1), (S13, -1), (S23, -1), (C123, 1), (C132, 1)], 6),
        _ => return Err(LieError::Index(format!("eulerian idempotent {k}"))),
    })
}

pub fn group_identity() -> GroupElement {
    ge(&[(ID, 1)], 1)
}

/// `(στ)(k) = σ(τ(k))`.
pub fn group_mul(a: &GroupElement, b: &GroupElement) -> GroupElement {
    let mut out = GroupElement::new();
    for (s, x) in a {
        for (t, y) in b {
            let st = [s[t[0] as usize], s[t[1] as usize], s[t[2] as usize]];
            *out.entry(st).or_insert_with(Q::zero) += x * y;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

pub fn group_add(a: &GroupElement, b: &GroupElement) -> GroupElement {
    let mut out = a.clone();
    for (s, x) in b {
        *out.entry(*s).or_insert_with(Q::zero) += x;
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// `σ·ψ` on `p(3) ≅ Lie(x, y)` with `x = t12`, `y = t23`, `t13 = -x-y`.
pub fn permute(sigma: [u8; 3], psi: &LieElement) -> LieElement {
    let one = [sigma[0] + 1, sigma[1] + 1, sigma[2] + 1];
    let sub = match one {
        ID => [(1, 0), (0, 1)],
        S12 => [(1, 0), (-1, -1)],
        S23 => [(-1, -1), (0, 1)],
        S13 => [(0, 1), (1, 0)],
        C123 => [(0, 1), (-1, -1)],
        _ => [(-1, -1), (1, 0)],
    };
    sub_xy(psi, &sub)
}

pub fn group_apply(g: &GroupElement, psi: &LieElement) -> Result<LieElement, LieError> {
    check_xy(psi)?;
    let mut acc = LieElement::zero(&psi.alphabet, psi.max_weight);
    for (s, c) in g {
        acc = acc.axpy(c, &permute(*s, psi))?;
    }
    Ok(acc)
}

pub fn eulerian_apply(k: usize, psi: &LieElement) -> Result<LieElement, LieError> {
    group_apply(&eulerian(k)?, psi)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn idempotents_are_complete() {
        let s = group_add(&group_add(&eulerian(1).unwrap(), &eulerian(2).unwrap()), &eulerian(3).unwrap());
        assert_eq!(s, group_identity());
        for i in 1..=3 {
            for j in 1..=3 {
                let p = group_mul(&eulerian(i).unwrap(), &eulerian(j).unwrap());
                if i == j {
                    assert_eq!(p, eulerian(i).unwrap());
                } else {
                    assert!(p.is_empty(), "e{i} e{j}");
                }
            }
        }
    }

    #[test]
    fn weight_two_pentagon() {
        let dims: Vec<usize> = (2..=4).map(|w| solve_grt(w, &[Equation::Pentagon], Exec::Sequential).unwrap().len()).collect();
        assert_eq!(dims, vec![1, 1, 0]);
    }
}
