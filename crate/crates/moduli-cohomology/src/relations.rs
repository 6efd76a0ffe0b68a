use std::collections::HashMap;

use exact_linalg::{Echelon, SparseVec, Q};
use num_traits::One;
use polygon_combinatorics::{classify, cross_ratio_pairs, enumerate, ChordDiagram, Filter};

use crate::{Form, ModuliError};

fn binom(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1usize, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

/// The quadratic relations `(sum_A alpha)(sum_B alpha)`, one per cross-ratio
/// pair.
pub fn quadratic_relations(n: usize) -> Result<Vec<Form>, ModuliError> {
    let mut out = Vec::new();
    for p in cross_ratio_pairs(n)? {
        let mut r = Form::zero(n, 2);
        for a in &p.a {
            for b in &p.b {
                r.add_scaled(&Q::one(), &Form::product(n, &[*a, *b])?);
            }
        }
        out.push(r);
    }
    Ok(out)
}

/// All products `m * (sum_A alpha)(sum_B alpha)` of the given degree.
pub fn relation_vectors(n: usize, degree: usize) -> Result<Vec<Form>, ModuliError> {
    if degree < 2 {
        return Ok(Vec::new());
    }
    let quads = quadratic_relations(n)?;
    let mults = enumerate(n, degree - 2, Filter::All)?;
    let mut out = Vec::new();
    for m in &mults {
        let mf = Form::monomial(m.clone());
        for r in &quads {
            let p = mf.wedge(r)?;
            if !p.is_zero() {
                out.push(p);
            }
        }
    }
    Ok(out)
}

/// Relation span in the monomial basis of one (arity, degree), echelonized so
/// that gravity monomials are never pivots.
#[derive(Clone, Debug)]
pub struct RelationContext {
    pub n: usize,
    pub degree: usize,
    pub monomials: Vec<ChordDiagram>,
    index: HashMap<ChordDiagram, usize>,
    is_gravity: Vec<bool>,
    echelon: Echelon,
}

impl RelationContext {
    pub fn build(n: usize, degree: usize, cap: usize) -> Result<Self, ModuliError> {
        let m = polygon_combinatorics::chords_of(n)?.len();
        let size = binom(m, degree);
        if size > cap {
            return Err(ModuliError::Cap { n, degree, size, cap });
        }
        let monomials = enumerate(n, degree, Filter::All)?;
        let index: HashMap<ChordDiagram, usize> = monomials.iter().cloned().enumerate().map(|(k, d)| (d, k)).collect();
        let is_gravity: Vec<bool> = monomials.iter().map(|d| classify(d).is_gravity).collect();
        let mut ctx = RelationContext { n, degree, echelon: Echelon::avoiding(monomials.len(), &is_gravity), monomials, index, is_gravity };
        for r in relation_vectors(n, degree)? {
            let v = ctx.vector(&r)?;
            ctx.echelon.insert(&v);
        }
        Ok(ctx)
    }

    pub fn dim(&self) -> usize {
        self.monomials.len()
    }

    pub fn rank(&self) -> usize {
        self.echelon.rank()
    }

    pub fn quotient_dim(&self) -> usize {
        self.dim() - self.rank()
    }

    pub fn vector(&self, f: &Form) -> Result<SparseVec, ModuliError> {
        if f.arity != self.n || (f.degree != self.degree && !f.is_zero()) {
            return Err(ModuliError::Mismatch(format!("form ({}, {}) in context ({}, {})", f.arity, f.degree, self.n, self.degree)));
        }
        let pairs = f.terms.iter().map(|(d, c)| (self.index[d], c.clone()));
        Ok(SparseVec::from_pairs(self.dim(), pairs).expect("indices in range"))
    }

    pub fn in_span(&self, f: &Form) -> Result<bool, ModuliError> {
        Ok(self.echelon.contains(&self.vector(f)?))
    }

    pub fn normal_form(&self, f: &Form) -> Result<Form, ModuliError> {
        let r = self.echelon.reduce(&self.vector(f)?);
        let mut out = Form::zero(self.n, self.degree);
        for (k, c) in r.entries() {
            debug_assert!(self.is_gravity[*k], "non-gravity monomial survived reduction");
            out.add_term(self.monomials[*k].clone(), c.clone());
        }
        Ok(out)
    }
}
