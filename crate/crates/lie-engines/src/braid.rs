//! Structured models of the braid Lie algebras.
//!
//! `t(n)` is built as the iterated semidirect product
//! `f_{n-1} ⋊ (f_{n-2} ⋊ (... ⋊ f_1))`, where `f_{j-1}` is free on
//! `t_{1j}, ..., t_{j-1,j}`. An element is one associative polynomial per
//! free factor. `p(n)` is the same model with the central sum of all
//! generators set to zero, and `d(n)` is `p(n)` read in chord coordinates.

use std::collections::{BTreeMap, HashMap};
use std::marker::PhantomData;

use exact_linalg::Q;
use serde::{Deserialize, Serialize};

use crate::free::{LieAlgebra, LieElement};
use crate::lyndon::{witt, Bracketings};
use crate::word::{self, Coeff, Poly, Word};
use crate::LieError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    T,
    P,
    D,
    Rb,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TElement<C: Coeff> {
    /// `comps[j - 2]` lives in the free factor on `t_{1j}..t_{j-1,j}`;
    /// letter `a` there is `t_{a+1, j}`.
    pub comps: Vec<Poly<C>>,
}

impl<C: Coeff> TElement<C> {
    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(|p| p.is_empty())
    }

    pub fn to_q(&self) -> TElement<Q> {
        TElement { comps: self.comps.iter().map(word::to_q).collect() }
    }

    pub fn weight_part(&self, w: usize) -> Self {
        TElement { comps: self.comps.iter().map(|p| word::homogeneous_part(p, w)).collect() }
    }

    pub fn scaled(&self, c: &C) -> Self {
        TElement { comps: self.comps.iter().map(|p| word::scale(p, c)).collect() }
    }

    pub fn min_weight(&self) -> Option<usize> {
        self.comps.iter().flat_map(|p| p.keys().map(|w| w.len())).min()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TModel {
    pub n: usize,
    pub max_weight: usize,
    /// Quotient by the central line (the `p(n)` and `d(n)` models).
    pub central_quotient: bool,
}

impl TModel {
    pub fn t(n: usize, max_weight: usize) -> Self {
        TModel { n, max_weight, central_quotient: false }
    }

    pub fn p(n: usize, max_weight: usize) -> Self {
        TModel { n, max_weight, central_quotient: true }
    }

    pub fn zero<C: Coeff>(&self) -> TElement<C> {
        TElement { comps: vec![Poly::new(); self.n.saturating_sub(1)] }
    }

    /// `t_{ij}`, symmetric in the indices.
    pub fn generator<C: Coeff>(&self, i: usize, j: usize) -> Result<TElement<C>, LieError> {
        let (i, j) = (i.min(j), i.max(j));
        if i == 0 || i == j || j > self.n {
            return Err(LieError::Index(format!("t{i}{j} in t({})", self.n)));
        }
        let mut e = self.zero();
        if self.max_weight >= 1 {
            e.comps[j - 2].insert(vec![(i - 1) as u8], C::one());
        }
        self.normalize(&mut e);
        Ok(e)
    }

    /// Sum of all generators; central in `t(n)`.
    pub fn center<C: Coeff>(&self) -> TElement<C> {
        let mut e = self.zero();
        if self.max_weight >= 1 {
            for j in 2..=self.n {
                for i in 1..j {
                    e.comps[j - 2].insert(vec![(i - 1) as u8], C::one());
                }
            }
        }
        e
    }

    /// In the quotient models the coefficient of `t_{1n}` is cleared using
    /// the central line.
    pub fn normalize<C: Coeff>(&self, e: &mut TElement<C>) {
        if !self.central_quotient || self.n < 2 {
            return;
        }
        let Some(c) = e.comps[self.n - 2].get(&vec![0u8]).cloned() else { return };
        let z = self.center::<C>();
        self.add_scaled_c(e, &c.neg_ref(), &z);
    }

    pub fn add_scaled_c<C: Coeff>(&self, acc: &mut TElement<C>, c: &C, x: &TElement<C>) {
        for (a, b) in acc.comps.iter_mut().zip(&x.comps) {
            word::axpy(a, c, b);
        }
    }

    pub fn add<C: Coeff>(&self, a: &TElement<C>, b: &TElement<C>) -> TElement<C> {
        let mut out = a.clone();
        self.add_scaled_c(&mut out, &C::one(), b);
        out
    }

    pub fn sub<C: Coeff>(&self, a: &TElement<C>, b: &TElement<C>) -> TElement<C> {
        let mut out = a.clone();
        self.add_scaled_c(&mut out, &C::one().neg_ref(), b);
        out
    }

    pub fn bracket<C: Coeff>(&self, a: &TElement<C>, b: &TElement<C>) -> TElement<C> {
        let mut out = self.zero();
        self.bracket_into(self.n, &a.comps, &b.comps, &mut out.comps);
        out
    }

    fn bracket_into<C: Coeff>(&self, m: usize, a: &[Poly<C>], b: &[Poly<C>], out: &mut [Poly<C>]) {
        if m < 2 {
            return;
        }
        let top = m - 2;
        let w = self.max_weight;
        let mut r = word::commutator(&a[top], &b[top], w);
        let rb = self.act(m, &a[..top], &b[top]);
        word::axpy(&mut r, &C::one(), &rb);
        let ra = self.act(m, &b[..top], &a[top]);
        word::axpy(&mut r, &C::one().neg_ref(), &ra);
        out[top] = r;
        self.bracket_into(m - 1, &a[..top], &b[..top], &mut out[..top]);
    }

    /// Action of `x ∈ t(m-1)` on the free factor `f_{m-1}`; `t_{ij}` acts by
    /// the derivation `a_i -> [a_i, a_j]`, `a_j -> [a_j, a_i]`.
    fn act<C: Coeff>(&self, m: usize, x: &[Poly<C>], b: &Poly<C>) -> Poly<C> {
        let mut out = Poly::new();
        if b.is_empty() {
            return out;
        }
        let w = self.max_weight;
        let bmin = b.keys().map(|k| k.len()).min().unwrap_or(0);
        for (idx, comp) in x.iter().enumerate() {
            let j = idx + 2;
            // letter l of this component is t_{l+1, j}: a_l <-> a_{j-1}
            let mut memo: HashMap<Word, Poly<C>> = HashMap::new();
            for (wd, c) in comp {
                if wd.len() + bmin > w {
                    continue;
                }
                let v = self.act_word(wd, j, b, &mut memo);
                word::axpy(&mut out, c, &v);
            }
        }
        let _ = m;
        out
    }

    fn act_word<C: Coeff>(&self, wd: &[u8], j: usize, b: &Poly<C>, memo: &mut HashMap<Word, Poly<C>>) -> Poly<C> {
        if wd.is_empty() {
            return b.clone();
        }
        if let Some(v) = memo.get(wd) {
            return v.clone();
        }
        let inner = self.act_word(&wd[1..], j, b, memo);
        let l = wd[0];
        let k = (j - 1) as u8;
        let w = self.max_weight;
        let al = word::letter::<C>(l);
        let ak = word::letter::<C>(k);
        let img_l = word::commutator(&al, &ak, 2);
        let img_k = word::commutator(&ak, &al, 2);
        let v = word::derive(
            &inner,
            &|a| {
                if a == l {
                    Some(img_l.clone())
                } else if a == k {
                    Some(img_k.clone())
                } else {
                    None
                }
            },
            w,
        );
        memo.insert(wd.to_vec(), v.clone());
        v
    }

    pub fn dim(&self, w: usize) -> usize {
        if w == 0 || w > self.max_weight {
            return 0;
        }
        if w == 1 {
            let d = self.n * (self.n - 1) / 2;
            return if self.central_quotient { d.saturating_sub(1) } else { d };
        }
        (1..self.n).map(|k| witt(k, w)).sum()
    }

    pub fn dims(&self) -> Vec<usize> {
        (1..=self.max_weight).map(|w| self.dim(w)).collect()
    }

    /// Lyndon coordinates per free factor: `(j, word, coefficient)`.
    pub fn lyndon_coordinates<C: Coeff>(&self, e: &TElement<C>) -> Result<Vec<(usize, Word, Q)>, LieError> {
        let mut out = Vec::new();
        let mut b = Bracketings::new();
        for (idx, p) in e.comps.iter().enumerate() {
            let j = idx + 2;
            let names: Vec<String> = (1..j).map(|i| format!("t{i}{j}")).collect();
            let le = LieElement::from_assoc_with(&names, self.max_weight, &word::to_q(p), &mut b)?;
            for (w, c) in le.terms() {
                out.push((j, w.clone(), c.clone()));
            }
        }
        Ok(out)
    }

    /// Labels of the Lyndon basis of weight `w`, e.g. `[t13,t23]`.
    pub fn component_basis(&self, w: usize) -> Vec<String> {
        let mut out = Vec::new();
        for j in 2..=self.n {
            if w == 1 && self.central_quotient && j == self.n {
                out.extend((2..j).map(|i| format!("t{i}{j}")));
                continue;
            }
            let names: Vec<String> = (1..j).map(|i| format!("t{i}{j}")).collect();
            for wd in crate::lyndon::lyndon_words(j - 1, w) {
                out.push(bracket_label(&names, &wd));
            }
        }
        out
    }

    /// Flat coordinates keyed by `(factor, word)`; equal elements have equal
    /// keys.
    pub fn flat<C: Coeff>(&self, e: &TElement<C>) -> BTreeMap<(usize, Word), Q> {
        let mut out = BTreeMap::new();
        for (idx, p) in e.comps.iter().enumerate() {
            for (w, c) in p {
                out.insert((idx + 2, w.clone()), c.to_q());
            }
        }
        out
    }

    pub fn p_alphabet(&self) -> Vec<String> {
        p_alphabet(self.n)
    }

    /// Reads a free Lie element over the `p_ij` letters into the model.
    pub fn from_p(&self, e: &LieElement) -> Result<TElement<Q>, LieError> {
        if e.alphabet != p_alphabet(self.n) {
            return Err(LieError::Alphabet);
        }
        let alg = TAlg::<Q>::new(self);
        let gens: Vec<TElement<Q>> = pairs(self.n).into_iter().map(|(i, j)| self.generator(i, j)).collect::<Result<_, _>>()?;
        let mut out = e.evaluate(&alg, &gens);
        self.normalize(&mut out);
        Ok(out)
    }

    /// Writes a model element as a free Lie element over the `p_ij` letters.
    pub fn to_p(&self, e: &TElement<Q>) -> Result<LieElement, LieError> {
        let names = p_alphabet(self.n);
        let idx: HashMap<(usize, usize), u8> = pairs(self.n).into_iter().enumerate().map(|(k, p)| (p, k as u8)).collect();
        let mut total: Poly<Q> = Poly::new();
        for (c, p) in e.comps.iter().enumerate() {
            let j = c + 2;
            for (w, x) in p {
                let nw: Word = w.iter().map(|&a| idx[&(a as usize + 1, j)]).collect();
                word::add_term(&mut total, nw, x);
            }
        }
        LieElement::from_assoc(&names, self.max_weight, &total)
    }

    pub fn from_d(&self, e: &LieElement) -> Result<TElement<Q>, LieError> {
        self.from_p(&d_to_p(self.n, e)?)
    }

    pub fn to_d(&self, e: &TElement<Q>) -> Result<LieElement, LieError> {
        p_to_d(self.n, &self.to_p(e)?)
    }
}

fn bracket_label(names: &[String], w: &[u8]) -> String {
    if w.len() == 1 {
        return names[w[0] as usize].clone();
    }
    let (u, v) = crate::lyndon::standard_factorization(w).expect("Lyndon word");
    format!("[{},{}]", bracket_label(names, u), bracket_label(names, v))
}

/// The model as a `LieAlgebra` with a chosen coefficient ring.
pub struct TAlg<'a, C> {
    pub model: &'a TModel,
    _c: PhantomData<C>,
}

impl<'a, C> TAlg<'a, C> {
    pub fn new(model: &'a TModel) -> Self {
        TAlg { model, _c: PhantomData }
    }
}

impl<C: Coeff> LieAlgebra for TAlg<'_, C> {
    type Elem = TElement<C>;
    fn zero(&self) -> TElement<C> {
        self.model.zero()
    }
    fn bracket(&self, a: &TElement<C>, b: &TElement<C>) -> TElement<C> {
        self.model.bracket(a, b)
    }
    fn add_scaled(&self, acc: &mut TElement<C>, c: &Q, x: &TElement<C>) {
        let c = C::from_q(c).expect("coefficient not representable");
        self.model.add_scaled_c(acc, &c, x);
    }
}

/// `(i, j)` with `1 <= i < j <= n`, lexicographic.
pub fn pairs(n: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            out.push((i, j));
        }
    }
    out
}

/// Chords of the (n+1)-gon: the pairs except `{1, n}`.
pub fn chords(n: usize) -> Vec<(usize, usize)> {
    pairs(n).into_iter().filter(|&p| p != (1, n)).collect()
}

pub fn p_alphabet(n: usize) -> Vec<String> {
    pairs(n).into_iter().map(|(i, j)| format!("p{i}{j}")).collect()
}

pub fn d_alphabet(n: usize) -> Vec<String> {
    chords(n).into_iter().map(|(i, j)| format!("d{i}{j}")).collect()
}

/// Index of `δ_{ab}` in the chord alphabet; degenerate symbols are `None`.
pub fn chord_index(n: usize, a: usize, b: usize) -> Option<usize> {
    if a >= b || a == 0 || b > n || (a, b) == (1, n) {
        return None;
    }
    chords(n).iter().position(|&c| c == (a, b))
}

/// `δ_ij ↦ Σ_{i ≤ r < s ≤ j} p_rs`.
pub fn d_to_p(n: usize, e: &LieElement) -> Result<LieElement, LieError> {
    if e.alphabet != d_alphabet(n) {
        return Err(LieError::Alphabet);
    }
    let pa = p_alphabet(n);
    let pidx: HashMap<(usize, usize), usize> = pairs(n).into_iter().enumerate().map(|(k, p)| (p, k)).collect();
    let images: Vec<LieElement> = chords(n)
        .into_iter()
        .map(|(i, j)| {
            let mut acc = LieElement::zero(&pa, e.max_weight);
            for r in i..=j {
                for s in r + 1..=j {
                    acc = acc.add(&LieElement::generator(&pa, e.max_weight, pidx[&(r, s)])).unwrap();
                }
            }
            acc
        })
        .collect();
    e.substitute_to(&pa, &images)
}

/// `p_ij ↦ δ_ij + δ_{i+1,j-1} - δ_{i+1,j} - δ_{i,j-1}`, degenerate symbols
/// being zero.
pub fn p_to_d(n: usize, e: &LieElement) -> Result<LieElement, LieError> {
    if e.alphabet != p_alphabet(n) {
        return Err(LieError::Alphabet);
    }
    let da = d_alphabet(n);
    let images: Vec<LieElement> = pairs(n).into_iter().map(|(i, j)| p_in_d(n, i, j, e.max_weight)).collect();
    e.substitute_to(&da, &images)
}

pub fn p_in_d(n: usize, i: usize, j: usize, max_weight: usize) -> LieElement {
    let da = d_alphabet(n);
    let mut acc = LieElement::zero(&da, max_weight);
    let terms: [(usize, usize, i64); 4] = [(i, j, 1), (i + 1, j - 1, 1), (i + 1, j, -1), (i, j - 1, -1)];
    for (a, b, s) in terms {
        if let Some(k) = chord_index(n, a, b) {
            acc = acc.axpy(&exact_linalg::q(s), &LieElement::generator(&da, max_weight, k)).unwrap();
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn t3_dims() {
        let m = TModel::t(3, 5);
        assert_eq!(m.dims(), vec![3, 1, 2, 3, 6]);
        assert_eq!(TModel::p(4, 1).dims(), vec![5]);
    }

    #[test]
    fn four_term_relation_holds() {
        let m = TModel::t(4, 3);
        for (i, j, k) in [(1, 2, 3), (1, 2, 4), (2, 4, 3), (3, 4, 1)] {
            let a = m.generator::<i64>(i, j).unwrap();
            let b = m.add(&m.generator(i, k).unwrap(), &m.generator(j, k).unwrap());
            assert!(m.bracket(&a, &b).is_zero(), "{i}{j}{k}");
        }
        let a = m.generator::<i64>(1, 2).unwrap();
        let b = m.generator::<i64>(3, 4).unwrap();
        assert!(m.bracket(&a, &b).is_zero());
        let c = m.center::<i64>();
        for (i, j) in pairs(4) {
            assert!(m.bracket(&c, &m.generator(i, j).unwrap()).is_zero());
        }
    }
}
