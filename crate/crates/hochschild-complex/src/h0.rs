use std::collections::HashMap;

use exact_linalg::exec::{self, Exec};
use exact_linalg::{Echelon, SparseVec, Q};
use moduli_cohomology::{normal_form, pullback, Form};
use polygon_combinatorics::ChordDiagram;
use serde::Serialize;

use crate::complex::{basis, corner_cut, face, ComplexElement, Module};
use crate::HochError;

#[derive(Clone, Copy, Debug, Default)]
pub struct H0Options {
    pub exec: Exec,
    /// Allow arity 8 and above.
    pub slow: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct H0Report {
    pub module: Module,
    pub arity: usize,
    /// Dimension of the total-degree-0 part (top-degree basis at this arity).
    pub top_prime_dim: usize,
    pub source_dim: usize,
    pub image_rank: usize,
    pub h0: usize,
    /// Basis elements spanning a complement of the image.
    pub basis: Vec<ChordDiagram>,
}

fn coords(f: &Form, index: &HashMap<ChordDiagram, usize>) -> Result<SparseVec, HochError> {
    let mut pairs = Vec::with_capacity(f.len());
    for (d, c) in &f.terms {
        pairs.push((index[d], c.clone()));
    }
    Ok(SparseVec::from_pairs(index.len(), pairs).expect("basis index"))
}

fn image_echelon(rows: Vec<Result<Form, HochError>>, index: &HashMap<ChordDiagram, usize>) -> Result<Echelon, HochError> {
    let mut ech = Echelon::new(index.len());
    for r in rows {
        ech.insert(&coords(&r?, index)?);
    }
    Ok(ech)
}

fn check_slow(n: usize, slow: bool) -> Result<(), HochError> {
    if n >= 8 && !slow {
        return Err(HochError::Slow { n });
    }
    Ok(())
}

/// Degree-zero cohomology at arity n: top-degree classes modulo the image of
/// the arity-(n+1), total-degree-(-1) component. Every top-degree element is
/// a cocycle because its image would have form degree above the top.
pub fn h0(module: Module, n: usize, opts: H0Options) -> Result<H0Report, HochError> {
    if n < 2 {
        return Err(HochError::Arity { n });
    }
    check_slow(n, opts.slow)?;
    let target = basis(module, n, n - 2)?;
    let index: HashMap<ChordDiagram, usize> = target.iter().cloned().enumerate().map(|(k, d)| (d, k)).collect();
    let source = basis(module, n + 1, n - 2)?;
    let rows = exec::map(opts.exec, &source, |m| {
        let e = ComplexElement::new(module, Form::monomial(m.clone()))?;
        Ok(corner_cut(&e)?.form)
    });
    let ech = image_echelon(rows, &index)?;
    let quotient: Vec<ChordDiagram> = target.iter().enumerate().filter(|(k, _)| !ech.is_pivot(*k)).map(|(_, d)| d.clone()).collect();
    Ok(H0Report {
        module,
        arity: n,
        top_prime_dim: target.len(),
        source_dim: source.len(),
        image_rank: ech.rank(),
        h0: quotient.len(),
        basis: quotient,
    })
}

// Normal form of `d_idx` applied to a raw form of arity n+1.
fn face_form(f: &Form, idx: usize) -> Result<Form, HochError> {
    let mut raw = Form::zero(f.arity - 1, f.degree);
    for (m, x) in &f.terms {
        if let Some((s, part)) = face(m, idx)? {
            raw.add_term(part, s * x);
        }
    }
    Ok(normal_form(&raw)?)
}

#[derive(Clone, Debug, Serialize)]
pub struct OntoReport {
    pub arity: usize,
    pub target_dim: usize,
    pub rank: usize,
    pub onto: bool,
}

/// `sum_{i=1}^{n} (-1)^i d_i` from arity n+1 onto the top prime classes at
/// arity n.
pub fn onto_check(n: usize, opts: H0Options) -> Result<OntoReport, HochError> {
    if n < 3 {
        return Err(HochError::Arity { n });
    }
    check_slow(n, opts.slow)?;
    let target = basis(Module::Dihedral, n, n - 2)?;
    let index: HashMap<ChordDiagram, usize> = target.iter().cloned().enumerate().map(|(k, d)| (d, k)).collect();
    let source = basis(Module::Dihedral, n + 1, n - 2)?;
    let rows = exec::map(opts.exec, &source, |m| {
        let f = Form::monomial(m.clone());
        let mut acc = Form::zero(n, n - 2);
        for i in 1..=n {
            let s = if i % 2 == 0 { Q::from_integer(1.into()) } else { Q::from_integer((-1).into()) };
            acc.add_scaled(&s, &face_form(&f, i)?);
        }
        Ok(acc)
    });
    let ech = image_echelon(rows, &index)?;
    Ok(OntoReport { arity: n, target_dim: target.len(), rank: ech.rank(), onto: ech.rank() == target.len() })
}

#[derive(Clone, Debug, Serialize)]
pub struct LemmaReport {
    pub arity: usize,
    pub classes: usize,
    /// `d_1 o pi_1^* = id` on every class.
    pub section: bool,
    /// `d_i o pi_1^* = 0` for `2 <= i <= n`.
    pub vanishing: bool,
    pub failures: Vec<String>,
}

impl LemmaReport {
    pub fn passed(&self) -> bool {
        self.section && self.vanishing
    }
}

/// Pull every top prime class at arity n back along the first side and cut
/// the inner corners.
pub fn lemma_triviality_check(n: usize, opts: H0Options) -> Result<LemmaReport, HochError> {
    if n < 3 {
        return Err(HochError::Arity { n });
    }
    check_slow(n, opts.slow)?;
    let classes = basis(Module::Dihedral, n, n - 2)?;
    let results = exec::map(opts.exec, &classes, |m| -> Result<Vec<String>, HochError> {
        let x = Form::monomial(m.clone());
        let p = pullback(&x, 1)?;
        let mut bad = Vec::new();
        if face_form(&p, 1)? != x {
            bad.push(format!("d_1 pi^*({m}) != {m}"));
        }
        for i in 2..=n {
            let y = face_form(&p, i)?;
            if !y.is_zero() {
                bad.push(format!("d_{i} pi^*({m}) = {y}"));
            }
        }
        Ok(bad)
    });
    let mut failures = Vec::new();
    for r in results {
        failures.extend(r?);
    }
    Ok(LemmaReport {
        arity: n,
        classes: classes.len(),
        section: !failures.iter().any(|f| f.starts_with("d_1 ")),
        vanishing: !failures.iter().any(|f| !f.starts_with("d_1 ")),
        failures,
    })
}

/// Lyndon words over the letters 2 < 3 whose letters sum to w.
pub fn lyndon_23_count(w: usize) -> usize {
    fn words(w: usize, cur: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if w == 0 {
            out.push(cur.clone());
            return;
        }
        for l in [2u8, 3] {
            if l as usize <= w {
                cur.push(l);
                words(w - l as usize, cur, out);
                cur.pop();
            }
        }
    }
    let mut all = Vec::new();
    words(w, &mut Vec::new(), &mut all);
    all.into_iter()
        .filter(|v| !v.is_empty() && (1..v.len()).all(|r| v[..] < [&v[r..], &v[..r]].concat()[..]))
        .count()
}

#[derive(Clone, Debug, Serialize)]
pub struct ConjectureRow {
    pub weight: usize,
    pub arity: usize,
    pub h0: usize,
    pub lyndon: usize,
    pub agree: bool,
}

/// Compare `h0(dihedral, w + 2)` with the Lyndon count for `w = 1..=w_max`.
pub fn conjecture_check(w_max: usize, opts: H0Options) -> Result<Vec<ConjectureRow>, HochError> {
    let mut out = Vec::new();
    for w in 1..=w_max {
        let r = h0(Module::Dihedral, w + 2, opts)?;
        let l = lyndon_23_count(w);
        out.push(ConjectureRow { weight: w, arity: w + 2, h0: r.h0, lyndon: l, agree: r.h0 == l });
    }
    Ok(out)
}
