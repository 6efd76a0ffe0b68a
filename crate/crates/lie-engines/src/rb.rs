//! Spherical ribbon braids `rb(n)`, the maps `π: rb(n) → d(n)` and
//! `γ: d(n) → rb(n)`, and the cabling and chord-gluing actions.
//!
//! `rb(n)` has generators `b_ij` on `n + 1` strands and twists `s_k`, with
//! `2 s_k + Σ_i b_ik = 0`, `s` central and `[b_ij, b_kl] = 0` for disjoint
//! pairs. The linear relations eliminate `b_{k,n+1}` and `s_{n+1}`, leaving
//! the letters `b_ij` (`j <= n`) and `s_k` (`k <= n`).

use exact_linalg::{q, Q};
use num_traits::One;

use crate::braid::{chord_index, chords, d_alphabet, pairs, TAlg, TElement, TModel};
use crate::free::LieElement;
use crate::presented::Presented;
use crate::LieError;

pub const DEFAULT_RB_MAX_N: usize = 4;
pub const DEFAULT_RB_MAX_WEIGHT: usize = 3;

pub fn rb_alphabet(n: usize) -> Vec<String> {
    let mut a: Vec<String> = pairs(n).into_iter().map(|(i, j)| format!("b{i}{j}")).collect();
    a.extend((1..=n).map(|k| format!("s{k}")));
    a
}

pub struct RbModel {
    pub n: usize,
    pub max_weight: usize,
    alphabet: Vec<String>,
    presented: Presented,
}

impl RbModel {
    pub fn new(n: usize, max_weight: usize) -> Result<Self, LieError> {
        Self::with_caps(n, max_weight, DEFAULT_RB_MAX_N, DEFAULT_RB_MAX_WEIGHT)
    }

    pub fn with_caps(n: usize, max_weight: usize, max_n: usize, max_w: usize) -> Result<Self, LieError> {
        if n < 1 || n > max_n || max_weight > max_w {
            return Err(LieError::Cap(format!("rb({n}) to weight {max_weight}, caps n <= {max_n}, weight <= {max_w}")));
        }
        let alphabet = rb_alphabet(n);
        let shell = RbModel { n, max_weight, alphabet: alphabet.clone(), presented: Presented::new(&alphabet, 0, &[])? };
        let rels = shell.relations()?;
        let presented = Presented::new(&alphabet, max_weight, &rels)?;
        Ok(RbModel { presented, ..shell })
    }

    pub fn alphabet(&self) -> &[String] {
        &self.alphabet
    }

    fn letter(&self, name: &str) -> LieElement {
        let i = self.alphabet.iter().position(|a| a == name).expect("rb letter");
        LieElement::generator(&self.alphabet, self.max_weight, i)
    }

    fn zero(&self) -> LieElement {
        LieElement::zero(&self.alphabet, self.max_weight)
    }

    /// `s_k` for `1 <= k <= n + 1`.
    pub fn s(&self, k: usize) -> Result<LieElement, LieError> {
        let n = self.n;
        if k >= 1 && k <= n {
            return Ok(self.letter(&format!("s{k}")));
        }
        if k != n + 1 {
            return Err(LieError::Index(format!("s{k} in rb({n})")));
        }
        // s_{n+1} = Σ s_k + Σ_{i<j<=n} b_ij
        let mut acc = self.zero();
        for k in 1..=n {
            acc = acc.add(&self.s(k)?)?;
        }
        for (i, j) in pairs(n) {
            acc = acc.add(&self.b(i, j)?)?;
        }
        Ok(acc)
    }

    /// `b_ij` for distinct `i, j` in `1..=n+1`.
    pub fn b(&self, i: usize, j: usize) -> Result<LieElement, LieError> {
        let n = self.n;
        let (i, j) = (i.min(j), i.max(j));
        if i == 0 || i == j || j > n + 1 {
            return Err(LieError::Index(format!("b{i}{j} in rb({n})")));
        }
        if j <= n {
            return Ok(self.letter(&format!("b{i}{j}")));
        }
        // b_{i,n+1} = -2 s_i - Σ_{k<=n, k≠i} b_ik
        let mut acc = self.s(i)?.scale(&q(-2));
        for k in 1..=n {
            if k != i {
                acc = acc.sub(&self.b(i, k)?)?;
            }
        }
        Ok(acc)
    }

    pub fn relations(&self) -> Result<Vec<LieElement>, LieError> {
        let n = self.n;
        let w = self.max_weight.max(2);
        let lift = |e: LieElement| e.with_max_weight(w);
        let mut gens: Vec<LieElement> = (0..self.alphabet.len()).map(|i| LieElement::generator(&self.alphabet, w, i)).collect();
        gens.iter_mut().for_each(|g| *g = lift(g.clone()));
        let mut rels = Vec::new();
        for k in 1..=n + 1 {
            let s = lift(self.s(k)?);
            for g in &gens {
                rels.push(s.bracket(g)?);
            }
        }
        let all = pairs(n + 1);
        for &(i, j) in &all {
            for &(k, l) in &all {
                if (i, j) < (k, l) && k != i && k != j && l != i && l != j {
                    rels.push(lift(self.b(i, j)?).bracket(&lift(self.b(k, l)?))?);
                }
            }
        }
        rels.retain(|r| !r.is_zero());
        Ok(rels)
    }

    pub fn dims(&self) -> Vec<usize> {
        self.presented.dims()
    }

    pub fn normal_form(&self, e: &LieElement) -> Result<LieElement, LieError> {
        self.presented.normal_form(e)
    }

    pub fn is_zero(&self, e: &LieElement) -> Result<bool, LieError> {
        self.presented.in_ideal(e)
    }

    pub fn bracket(&self, a: &LieElement, b: &LieElement) -> Result<LieElement, LieError> {
        self.normal_form(&a.bracket(b)?)
    }

    /// Letter images `δ_ij ↦ Σ_{i<=r<s<=j} b_rs + Σ_{i<=k<=j} s_k`.
    pub fn gamma_letter(&self, i: usize, j: usize) -> Result<LieElement, LieError> {
        let mut acc = self.zero();
        for r in i..=j {
            acc = acc.add(&self.s(r)?)?;
            for s in r + 1..=j {
                acc = acc.add(&self.b(r, s)?)?;
            }
        }
        Ok(acc)
    }

    /// `γ` on an element of `d(n)` written over the chord letters.
    pub fn gamma(&self, e: &LieElement) -> Result<LieElement, LieError> {
        if e.alphabet != d_alphabet(self.n) {
            return Err(LieError::Alphabet);
        }
        let images: Vec<LieElement> = chords(self.n).into_iter().map(|(i, j)| self.gamma_letter(i, j)).collect::<Result<_, _>>()?;
        self.normal_form(&e.with_max_weight(self.max_weight).substitute(&images)?)
    }

    /// `π`: `b_ij ↦ p_ij`, `s_k ↦ 0`, landing in the `p(n)` model.
    pub fn pi(&self, e: &LieElement) -> Result<TElement<Q>, LieError> {
        if e.alphabet != self.alphabet {
            return Err(LieError::Alphabet);
        }
        let m = TModel::p(self.n, self.max_weight);
        let mut images: Vec<TElement<Q>> = Vec::new();
        for (i, j) in pairs(self.n) {
            images.push(m.generator(i, j)?);
        }
        for _ in 1..=self.n {
            images.push(m.zero());
        }
        let mut out = e.evaluate(&TAlg::<Q>::new(&m), &images);
        m.normalize(&mut out);
        Ok(out)
    }

    /// Cabling of strand `i` (`1 <= i <= n`): `rb(n) → rb(n+1)`.
    pub fn cable(&self, i: usize, e: &LieElement, target: &RbModel) -> Result<LieElement, LieError> {
        let n = self.n;
        if i == 0 || i > n || target.n != n + 1 {
            return Err(LieError::Index(format!("cabling strand {i} of rb({n})")));
        }
        let up = |x: usize| if x < i { x } else { x + 1 };
        let mut images = Vec::new();
        for (u, v) in pairs(n) {
            let img = if u == i {
                target.b(i, up(v))?.add(&target.b(i + 1, up(v))?)?
            } else if v == i {
                target.b(u, i)?.add(&target.b(u, i + 1)?)?
            } else {
                target.b(up(u), up(v))?
            };
            images.push(img);
        }
        for k in 1..=n {
            let img = if k == i { target.s(i)?.add(&target.s(i + 1)?)?.add(&target.b(i, i + 1)?)? } else { target.s(up(k))? };
            images.push(img);
        }
        target.normal_form(&e.with_max_weight(target.max_weight).substitute(&images)?)
    }

    pub fn generators(&self) -> Vec<(String, LieElement)> {
        self.alphabet.iter().enumerate().map(|(i, a)| (a.clone(), LieElement::generator(&self.alphabet, self.max_weight, i))).collect()
    }
}

/// `∂_i: d(n) → d(n+1)` on chord letters. `∂_0` shifts every index up,
/// `∂_{n+1}` is the inclusion and `1 <= i <= n` glues a triangle to side
/// `i`.
pub fn dihedral_action(n: usize, i: usize, e: &LieElement) -> Result<LieElement, LieError> {
    if e.alphabet != d_alphabet(n) {
        return Err(LieError::Alphabet);
    }
    if i > n + 1 {
        return Err(LieError::Index(format!("∂_{i} on d({n})")));
    }
    let target = d_alphabet(n + 1);
    let images: Vec<LieElement> = chords(n)
        .into_iter()
        .map(|(k, l)| {
            let (a, b) = glue_chord(n, i, k, l);
            let idx = chord_index(n + 1, a, b).expect("glued chord is a chord");
            LieElement::generator(&target, e.max_weight, idx)
        })
        .collect();
    e.substitute_to(&target, &images)
}

pub fn glue_chord(n: usize, i: usize, k: usize, l: usize) -> (usize, usize) {
    if i == 0 {
        (k + 1, l + 1)
    } else if i == n + 1 {
        (k, l)
    } else {
        (if k <= i { k } else { k + 1 }, if l < i { l } else { l + 1 })
    }
}

/// Alternating sum `Σ_{i=0}^{n+1} (-1)^i ∂_i`.
pub fn dihedral_coboundary(n: usize, e: &LieElement) -> Result<LieElement, LieError> {
    let mut acc = LieElement::zero(&d_alphabet(n + 1), e.max_weight);
    for i in 0..=n + 1 {
        let s = if i % 2 == 0 { Q::one() } else { -Q::one() };
        acc = acc.axpy(&s, &dihedral_action(n, i, e)?)?;
    }
    Ok(acc)
}

/// `(π∘∂_i − ∂_i∘π)(g)` for every generator `g` of `rb(n)`, in chord
/// coordinates of `d(n+1)`.
pub fn discrepancy(n: usize, i: usize) -> Result<Vec<(String, LieElement)>, LieError> {
    let src = RbModel::with_caps(n, 1, usize::MAX, 1)?;
    let dst = RbModel::with_caps(n + 1, 1, usize::MAX, 1)?;
    let pn = TModel::p(n, 1);
    let pn1 = TModel::p(n + 1, 1);
    let mut out = Vec::new();
    for (name, g) in src.generators() {
        let lhs = dst.pi(&src.cable(i, &g, &dst)?)?;
        let pd = pn.to_d(&src.pi(&g)?)?;
        let rhs = pn1.from_d(&dihedral_action(n, i, &pd)?)?;
        out.push((name, pn1.to_d(&pn1.sub(&lhs, &rhs))?));
    }
    Ok(out)
}

/// The literal chord relations `[P_ij, P_kl] = 0` over quadruples in `[n]`,
/// with `P_ij` the four-term chord expression of `p_ij`.
pub fn literal_d_relations(n: usize, max_weight: usize) -> Vec<LieElement> {
    let mut rels = Vec::new();
    let ps = pairs(n);
    for &(i, j) in &ps {
        for &(k, l) in &ps {
            if (i, j) < (k, l) && k != i && k != j && l != i && l != j {
                let a = crate::braid::p_in_d(n, i, j, max_weight.max(2));
                let b = crate::braid::p_in_d(n, k, l, max_weight.max(2));
                let r = a.bracket(&b).unwrap();
                if !r.is_zero() {
                    rels.push(r);
                }
            }
        }
    }
    rels
}

/// Quotient dims of the free Lie algebra on chords modulo the literal
/// relation set, next to the `p(n)` model dims.
pub fn literal_d_diagnostics(n: usize, max_weight: usize) -> Result<(Vec<usize>, Vec<usize>), LieError> {
    let p = Presented::new(&d_alphabet(n), max_weight, &literal_d_relations(n, max_weight))?;
    Ok((p.dims(), TModel::p(n, max_weight).dims()))
}

/// `γ(δ_c)` as the cabled twist: `s_1 ∈ rb(1)` cabled `m - 1` times on its
/// first strand gives `Σ_{k<=m} s_k + Σ_{k<l<=m} b_kl` in `rb(m)`.
pub fn cabled_twist(m: usize) -> Result<LieElement, LieError> {
    let mut cur = RbModel::with_caps(1, 1, usize::MAX, 1)?;
    let mut e = cur.s(1)?;
    for k in 1..m {
        let next = RbModel::with_caps(k + 1, 1, usize::MAX, 1)?;
        e = cur.cable(1, &e, &next)?;
        cur = next;
    }
    Ok(e)
}
