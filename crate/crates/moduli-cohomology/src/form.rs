use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use exact_linalg::{parse_q, q_to_string, Q};
use num_traits::{One, Zero};
use polygon_combinatorics::{Chord, ChordDiagram};
use serde::{Deserialize, Serialize};

use crate::ModuliError;

/// A rational combination of chord monomials of one arity and degree.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Form {
    pub arity: usize,
    pub degree: usize,
    pub terms: BTreeMap<ChordDiagram, Q>,
}

impl Form {
    pub fn zero(arity: usize, degree: usize) -> Self {
        Form { arity, degree, terms: BTreeMap::new() }
    }

    pub fn one(arity: usize) -> Self {
        Self::monomial(ChordDiagram::empty(arity))
    }

    pub fn monomial(d: ChordDiagram) -> Self {
        let mut f = Form::zero(d.arity, d.degree());
        f.terms.insert(d, Q::one());
        f
    }

    /// Ordered product of chords, with the reordering sign absorbed. A repeated
    /// chord gives zero.
    pub fn product(arity: usize, chords: &[Chord]) -> Result<Self, ModuliError> {
        let mut sorted = chords.to_vec();
        sorted.sort();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Ok(Form::zero(arity, chords.len()));
        }
        let (d, s) = ChordDiagram::from_chords(arity, chords.to_vec())?;
        let mut f = Form::monomial(d);
        if s < 0 {
            f.scale(&-Q::one());
        }
        Ok(f)
    }

    pub fn alpha(arity: usize, c: Chord) -> Result<Self, ModuliError> {
        Self::product(arity, &[c])
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, d: &ChordDiagram) -> Q {
        self.terms.get(d).cloned().unwrap_or_else(Q::zero)
    }

    pub fn add_term(&mut self, d: ChordDiagram, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(d) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, c: &Q, other: &Form) {
        for (d, x) in &other.terms {
            self.add_term(d.clone(), c * x);
        }
    }

    pub fn scale(&mut self, c: &Q) {
        if c.is_zero() {
            self.terms.clear();
            return;
        }
        for v in self.terms.values_mut() {
            *v *= c;
        }
    }

    /// Graded-commutative product on raw monomials (no normal form).
    pub fn wedge(&self, other: &Form) -> Result<Form, ModuliError> {
        if self.arity != other.arity {
            return Err(ModuliError::Mismatch(format!("arity {} vs {}", self.arity, other.arity)));
        }
        let mut out = Form::zero(self.arity, self.degree + other.degree);
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                let mut cs = a.chords.clone();
                cs.extend(b.chords.iter().copied());
                let p = Form::product(self.arity, &cs)?;
                out.add_scaled(&(x * y), &p);
            }
        }
        Ok(out)
    }

    pub fn to_json(&self) -> FormJson {
        FormJson {
            arity: self.arity,
            degree: self.degree,
            terms: self
                .terms
                .iter()
                .map(|(d, c)| TermJson { coeff: q_to_string(c), chords: d.chords.iter().map(|c| [c.i as usize, c.j as usize]).collect() })
                .collect(),
        }
    }

    pub fn from_json(j: &FormJson) -> Result<Form, ModuliError> {
        let mut f = Form::zero(j.arity, j.degree);
        for t in &j.terms {
            let c = parse_q(&t.coeff).map_err(|e| ModuliError::Mismatch(e.to_string()))?;
            let chords = t
                .chords
                .iter()
                .map(|p| Chord::new(j.arity, p[0], p[1]))
                .collect::<Result<Vec<_>, _>>()?;
            if chords.len() != j.degree {
                return Err(ModuliError::Mismatch(format!("term of degree {} in a degree {} form", chords.len(), j.degree)));
            }
            let mut p = Form::product(j.arity, &chords)?;
            p.scale(&c);
            f.add_scaled(&Q::one(), &p);
        }
        Ok(f)
    }
}

impl std::fmt::Display for Form {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(d, c)| format!("{}*{}", q_to_string(c), d)).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct TermJson {
    pub coeff: String,
    pub chords: Vec<[usize; 2]>,
}

/// `{"arity": n, "degree": d, "terms": [{"coeff": "p/q", "chords": [[i,j],...]}]}`
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct FormJson {
    pub arity: usize,
    pub degree: usize,
    pub terms: Vec<TermJson>,
}

impl Serialize for Form {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Form {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let j = FormJson::deserialize(d)?;
        Form::from_json(&j).map_err(serde::de::Error::custom)
    }
}

/// Sum of pure tensors `outer ⊗ inner`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct TensorForm {
    pub outer_arity: usize,
    pub inner_arity: usize,
    pub terms: BTreeMap<(ChordDiagram, ChordDiagram), Q>,
}

impl TensorForm {
    pub fn zero(outer_arity: usize, inner_arity: usize) -> Self {
        TensorForm { outer_arity, inner_arity, terms: BTreeMap::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, o: ChordDiagram, i: ChordDiagram, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry((o, i)) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_product(&mut self, c: &Q, outer: &Form, inner: &Form) {
        for (o, x) in &outer.terms {
            for (i, y) in &inner.terms {
                self.add_term(o.clone(), i.clone(), c * x * y);
            }
        }
    }

    pub fn add_scaled(&mut self, c: &Q, other: &TensorForm) {
        for ((o, i), x) in &other.terms {
            self.add_term(o.clone(), i.clone(), c * x);
        }
    }
}

impl std::fmt::Display for TensorForm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|((o, i), c)| format!("{}*{}⊗{}", q_to_string(c), o, i)).collect();
        write!(f, "{}", parts.join(" + "))
    }
}
