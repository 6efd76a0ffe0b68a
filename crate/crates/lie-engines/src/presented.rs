//! Free Lie algebras modulo quadratic relations, built weight by weight.
//!
//! Used for `rb(n)` and as the independent oracle for the structured braid
//! models. The ideal in weight `w` is spanned by `[g, v]` for generators `g`
//! and `v` in the ideal in weight `w - 1`.

use std::collections::HashMap;

use exact_linalg::{Echelon, SparseVec, Q};

use crate::free::LieElement;
use crate::lyndon::{lyndon_words, Bracketings};
use crate::word::Word;
use crate::LieError;

pub struct Presented {
    pub alphabet: Vec<String>,
    pub max_weight: usize,
    words: Vec<Vec<Word>>,
    index: Vec<HashMap<Word, usize>>,
    ideal: Vec<Echelon>,
}

impl Presented {
    /// `relations` must be homogeneous of weight 2.
    pub fn new(alphabet: &[String], max_weight: usize, relations: &[LieElement]) -> Result<Self, LieError> {
        let k = alphabet.len();
        let mut words = vec![Vec::new()];
        let mut index = vec![HashMap::new()];
        for w in 1..=max_weight {
            let ws = lyndon_words(k, w);
            index.push(ws.iter().enumerate().map(|(i, x)| (x.clone(), i)).collect());
            words.push(ws);
        }
        let mut p = Presented {
            alphabet: alphabet.to_vec(),
            max_weight,
            ideal: (0..=max_weight).map(|w| Echelon::new(words[w].len())).collect(),
            words,
            index,
        };
        if max_weight < 2 {
            return Ok(p);
        }
        for r in relations {
            if r.alphabet != p.alphabet {
                return Err(LieError::Alphabet);
            }
            if r.terms().keys().any(|w| w.len() != 2) {
                return Err(LieError::Mismatch("relation is not quadratic".into()));
            }
            let v = p.vector(r, 2);
            p.ideal[2].insert(&v);
        }
        let gens: Vec<LieElement> = (0..k).map(|i| LieElement::generator(alphabet, max_weight, i)).collect();
        for w in 3..=max_weight {
            let prev: Vec<LieElement> = p.ideal[w - 1].rows().iter().map(|row| p.element(row, w - 1)).collect();
            let mut b = Bracketings::new();
            for g in &gens {
                for v in &prev {
                    let br = bracket_with(g, v, &mut b)?;
                    let vec = p.vector(&br, w);
                    p.ideal[w].insert(&vec);
                }
            }
        }
        Ok(p)
    }

    fn vector(&self, e: &LieElement, w: usize) -> SparseVec {
        let pairs = e.terms().iter().filter(|(k, _)| k.len() == w).map(|(k, c)| (self.index[w][k], c.clone()));
        SparseVec::from_pairs(self.words[w].len(), pairs).expect("Lyndon index")
    }

    fn element(&self, v: &SparseVec, w: usize) -> LieElement {
        LieElement::from_terms(&self.alphabet, self.max_weight, v.entries().iter().map(|(i, c)| (self.words[w][*i].clone(), c.clone())))
            .expect("Lyndon words")
    }

    pub fn dim(&self, w: usize) -> usize {
        if w == 0 || w > self.max_weight {
            return 0;
        }
        self.words[w].len() - self.ideal[w].rank()
    }

    pub fn dims(&self) -> Vec<usize> {
        (1..=self.max_weight).map(|w| self.dim(w)).collect()
    }

    /// Canonical representative modulo the ideal.
    pub fn normal_form(&self, e: &LieElement) -> Result<LieElement, LieError> {
        if e.alphabet != self.alphabet {
            return Err(LieError::Alphabet);
        }
        let mut terms: Vec<(Word, Q)> = Vec::new();
        for w in 1..=self.max_weight.min(e.max_weight) {
            let v = self.ideal[w].reduce(&self.vector(e, w));
            terms.extend(v.entries().iter().map(|(i, c)| (self.words[w][*i].clone(), c.clone())));
        }
        LieElement::from_terms(&self.alphabet, self.max_weight.min(e.max_weight), terms)
    }

    pub fn in_ideal(&self, e: &LieElement) -> Result<bool, LieError> {
        Ok(self.normal_form(e)?.is_zero())
    }
}

fn bracket_with(a: &LieElement, b: &LieElement, br: &mut Bracketings) -> Result<LieElement, LieError> {
    let w = a.max_weight.min(b.max_weight);
    let p = crate::word::commutator(&a.to_assoc_with(br), &b.to_assoc_with(br), w);
    LieElement::from_assoc_with(&a.alphabet, w, &p, br)
}

/// `t(n)` by generators `t_ij` and the 4T and commutation relations.
pub fn t_presented(n: usize, max_weight: usize) -> Result<Presented, LieError> {
    let pairs = crate::braid::pairs(n);
    let names: Vec<String> = pairs.iter().map(|(i, j)| format!("t{i}{j}")).collect();
    let g = |i: usize, j: usize| {
        let k = pairs.iter().position(|&p| p == (i.min(j), i.max(j))).unwrap();
        LieElement::generator(&names, max_weight, k)
    };
    let mut rels = Vec::new();
    for &(i, j) in &pairs {
        for k in 1..=n {
            if k == i || k == j {
                continue;
            }
            rels.push(g(i, j).bracket(&g(i, k).add(&g(j, k))?)?);
        }
        for &(k, l) in &pairs {
            if k != i && k != j && l != i && l != j {
                rels.push(g(i, j).bracket(&g(k, l))?);
            }
        }
    }
    Presented::new(&names, max_weight, &rels)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn t3_by_relations() {
        let p = t_presented(3, 4).unwrap();
        assert_eq!(p.dims(), vec![3, 1, 2, 3]);
    }
}
