use std::collections::{BTreeMap, HashMap};

use exact_linalg::{parse_q, q_to_string, Q};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::lyndon::{is_lyndon, lyndon_words, standard_factorization, Bracketings};
use crate::word::{self, Poly, Word};
use crate::LieError;

/// Truncated element of a free Lie algebra, in Lyndon coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieElement {
    pub alphabet: Vec<String>,
    pub max_weight: usize,
    terms: BTreeMap<Word, Q>,
}

#[derive(Serialize, Deserialize)]
pub struct LieJson {
    pub alphabet: Vec<String>,
    pub max_weight: usize,
    pub terms: BTreeMap<String, String>,
}

impl LieElement {
    pub fn zero(alphabet: &[String], max_weight: usize) -> Self {
        LieElement { alphabet: alphabet.to_vec(), max_weight, terms: BTreeMap::new() }
    }

    pub fn generator(alphabet: &[String], max_weight: usize, i: usize) -> Self {
        let mut e = Self::zero(alphabet, max_weight);
        if max_weight >= 1 {
            e.terms.insert(vec![i as u8], Q::one());
        }
        e
    }

    pub fn from_terms(alphabet: &[String], max_weight: usize, terms: impl IntoIterator<Item = (Word, Q)>) -> Result<Self, LieError> {
        let mut e = Self::zero(alphabet, max_weight);
        for (w, c) in terms {
            if !is_lyndon(&w) || w.iter().any(|&a| a as usize >= alphabet.len()) {
                return Err(LieError::NotLyndon(e.spell(&w)));
            }
            if w.len() <= max_weight {
                word::add_term(&mut e.terms, w, &c);
            }
        }
        Ok(e)
    }

    pub fn terms(&self) -> &BTreeMap<Word, Q> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, w: &[u8]) -> Q {
        self.terms.get(w).cloned().unwrap_or_else(Q::zero)
    }

    pub fn spell(&self, w: &[u8]) -> String {
        w.iter().map(|&a| self.alphabet.get(a as usize).map(String::as_str).unwrap_or("?")).collect()
    }

    pub fn weight_part(&self, w: usize) -> Self {
        let mut e = Self::zero(&self.alphabet, self.max_weight);
        e.terms = self.terms.iter().filter(|(k, _)| k.len() == w).map(|(k, c)| (k.clone(), c.clone())).collect();
        e
    }

    pub fn with_max_weight(&self, w: usize) -> Self {
        let mut e = self.clone();
        e.max_weight = w;
        e.terms.retain(|k, _| k.len() <= w);
        e
    }

    fn check_same(&self, o: &Self) -> Result<(), LieError> {
        if self.alphabet != o.alphabet {
            return Err(LieError::Alphabet);
        }
        Ok(())
    }

    pub fn add(&self, o: &Self) -> Result<Self, LieError> {
        self.axpy(&Q::one(), o)
    }

    pub fn sub(&self, o: &Self) -> Result<Self, LieError> {
        self.axpy(&-Q::one(), o)
    }

    /// `self + c * o`
    pub fn axpy(&self, c: &Q, o: &Self) -> Result<Self, LieError> {
        self.check_same(o)?;
        let mut e = self.clone();
        e.max_weight = self.max_weight.min(o.max_weight);
        e.terms.retain(|k, _| k.len() <= e.max_weight);
        for (w, x) in &o.terms {
            if w.len() <= e.max_weight {
                word::add_term(&mut e.terms, w.clone(), &(x * c));
            }
        }
        Ok(e)
    }

    pub fn scale(&self, c: &Q) -> Self {
        let mut e = self.clone();
        if c.is_zero() {
            e.terms.clear();
        } else {
            for x in e.terms.values_mut() {
                *x *= c;
            }
        }
        e
    }

    pub fn to_assoc(&self) -> Poly<Q> {
        let mut b = Bracketings::new();
        self.to_assoc_with(&mut b)
    }

    pub fn to_assoc_with(&self, b: &mut Bracketings) -> Poly<Q> {
        let mut out = Poly::new();
        for (w, c) in &self.terms {
            for (u, x) in b.get(w) {
                word::add_term(&mut out, u.clone(), &(c * Q::from_integer((*x).into())));
            }
        }
        out
    }

    /// Reads a Lie polynomial back from its associative image. Fails if the
    /// polynomial is not a Lie element.
    pub fn from_assoc(alphabet: &[String], max_weight: usize, p: &Poly<Q>) -> Result<Self, LieError> {
        let mut b = Bracketings::new();
        Self::from_assoc_with(alphabet, max_weight, p, &mut b)
    }

    pub fn from_assoc_with(alphabet: &[String], max_weight: usize, p: &Poly<Q>, b: &mut Bracketings) -> Result<Self, LieError> {
        let mut rest: Poly<Q> = p.iter().filter(|(w, _)| w.len() <= max_weight).map(|(w, c)| (w.clone(), c.clone())).collect();
        let mut e = Self::zero(alphabet, max_weight);
        while let Some((w, c)) = rest.iter().next().map(|(w, c)| (w.clone(), c.clone())) {
            if w.is_empty() || !is_lyndon(&w) {
                return Err(LieError::NotLie(e.spell(&w)));
            }
            for (u, x) in b.get(&w) {
                word::add_term(&mut rest, u.clone(), &(-(&c) * Q::from_integer((*x).into())));
            }
            e.terms.insert(w, c);
        }
        Ok(e)
    }

    pub fn bracket(&self, o: &Self) -> Result<Self, LieError> {
        self.check_same(o)?;
        let w = self.max_weight.min(o.max_weight);
        let mut b = Bracketings::new();
        let p = word::commutator(&self.to_assoc_with(&mut b), &o.to_assoc_with(&mut b), w);
        Self::from_assoc_with(&self.alphabet, w, &p, &mut b)
    }

    /// Substitutes `images[a]` (elements of another free Lie algebra) for
    /// the letters.
    pub fn substitute(&self, images: &[LieElement]) -> Result<Self, LieError> {
        let Some(first) = images.first() else {
            return Err(LieError::Alphabet);
        };
        self.substitute_to(&first.alphabet.clone(), images)
    }

    pub fn substitute_to(&self, target: &[String], images: &[LieElement]) -> Result<Self, LieError> {
        if images.len() != self.alphabet.len() || images.iter().any(|x| x.alphabet != target) {
            return Err(LieError::Alphabet);
        }
        let w = images.iter().map(|x| x.max_weight).fold(self.max_weight, usize::min);
        let mut b = Bracketings::new();
        let imgs: Vec<Poly<Q>> = images.iter().map(|x| x.to_assoc_with(&mut b)).collect();
        let p = word::substitute(&self.to_assoc_with(&mut b), &imgs, w);
        Self::from_assoc_with(target, w, &p, &mut b)
    }

    /// Evaluates in any Lie algebra by standard bracketing.
    pub fn evaluate<L: LieAlgebra>(&self, alg: &L, images: &[L::Elem]) -> L::Elem {
        let words: Vec<Word> = self.terms.keys().cloned().collect();
        let vals = evaluate_words(alg, &words, images);
        let mut acc = alg.zero();
        for (v, c) in vals.iter().zip(self.terms.values()) {
            alg.add_scaled(&mut acc, c, v);
        }
        acc
    }

    pub fn to_json(&self) -> LieJson {
        LieJson {
            alphabet: self.alphabet.clone(),
            max_weight: self.max_weight,
            terms: self.terms.iter().map(|(w, c)| (self.spell(w), q_to_string(c))).collect(),
        }
    }

    pub fn from_json(j: &LieJson) -> Result<Self, LieError> {
        let mut terms = Vec::new();
        for (k, v) in &j.terms {
            let w = parse_word(&j.alphabet, k)?;
            terms.push((w, parse_q(v).map_err(|_| LieError::Parse(v.clone()))?));
        }
        Self::from_terms(&j.alphabet, j.max_weight, terms)
    }
}

/// Splits a concatenation of generator names, longest name first.
pub fn parse_word(alphabet: &[String], s: &str) -> Result<Word, LieError> {
    let mut out = Vec::new();
    let mut rest = s;
    while !rest.is_empty() {
        let best = alphabet
            .iter()
            .enumerate()
            .filter(|(_, a)| !a.is_empty() && rest.starts_with(a.as_str()))
            .max_by_key(|(_, a)| a.len());
        match best {
            Some((i, a)) => {
                out.push(i as u8);
                rest = &rest[a.len()..];
            }
            None => return Err(LieError::Parse(s.to_string())),
        }
    }
    Ok(out)
}

pub trait LieAlgebra {
    type Elem: Clone;
    fn zero(&self) -> Self::Elem;
    fn bracket(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn add_scaled(&self, acc: &mut Self::Elem, c: &Q, x: &Self::Elem);
}

/// Images of the standard bracketings `P_w`, memoised over shared factors.
pub fn evaluate_words<L: LieAlgebra>(alg: &L, words: &[Word], images: &[L::Elem]) -> Vec<L::Elem> {
    fn go<L: LieAlgebra>(alg: &L, w: &[u8], images: &[L::Elem], memo: &mut HashMap<Word, L::Elem>) -> L::Elem {
        if w.len() == 1 {
            return images[w[0] as usize].clone();
        }
        if let Some(v) = memo.get(w) {
            return v.clone();
        }
        let (u, v) = standard_factorization(w).expect("Lyndon word");
        let a = go(alg, u, images, memo);
        let b = go(alg, v, images, memo);
        let r = alg.bracket(&a, &b);
        memo.insert(w.to_vec(), r.clone());
        r
    }
    let mut memo = HashMap::new();
    words.iter().map(|w| go(alg, w, images, &mut memo)).collect()
}

/// The free Lie algebra itself, so generic evaluation also covers
/// substitution.
pub struct Free {
    pub alphabet: Vec<String>,
    pub max_weight: usize,
}

impl LieAlgebra for Free {
    type Elem = LieElement;
    fn zero(&self) -> LieElement {
        LieElement::zero(&self.alphabet, self.max_weight)
    }
    fn bracket(&self, a: &LieElement, b: &LieElement) -> LieElement {
        a.bracket(b).expect("same alphabet")
    }
    fn add_scaled(&self, acc: &mut LieElement, c: &Q, x: &LieElement) {
        *acc = acc.axpy(c, x).expect("same alphabet");
    }
}

/// Lyndon basis of the weight-`w` part.
pub fn lyndon_basis(alphabet: &[String], w: usize) -> Vec<Word> {
    lyndon_words(alphabet.len(), w)
}

pub fn alphabet(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

/// Bracket expressions such as `2*[x,[x,y]] - 1/2*y`.
#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Gen(String),
    Bracket(Box<Expr>, Box<Expr>),
    Sum(Vec<(Q, Expr)>),
}

impl Expr {
    pub fn parse(s: &str) -> Result<Expr, LieError> {
        let toks = tokenize(s)?;
        let mut pos = 0;
        let e = parse_sum(&toks, &mut pos)?;
        if pos != toks.len() {
            return Err(LieError::Parse(s.to_string()));
        }
        Ok(e)
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Open,
    Close,
    Comma,
    Plus,
    Minus,
    Star,
    Num(String),
    Name(String),
}

fn tokenize(s: &str) -> Result<Vec<Tok>, LieError> {
    let cs: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < cs.len() {
        let c = cs[i];
        match c {
            ' ' | '\t' => {}
            '[' => out.push(Tok::Open),
            ']' => out.push(Tok::Close),
            ',' => out.push(Tok::Comma),
            '+' => out.push(Tok::Plus),
            '-' => out.push(Tok::Minus),
            '*' => out.push(Tok::Star),
            _ if c.is_ascii_digit() => {
                let st = i;
                while i + 1 < cs.len() && (cs[i + 1].is_ascii_digit() || cs[i + 1] == '/') {
                    i += 1;
                }
                out.push(Tok::Num(cs[st..=i].iter().collect()));
            }
            _ if c.is_alphabetic() || c == '_' => {
                let st = i;
                while i + 1 < cs.len() && (cs[i + 1].is_alphanumeric() || cs[i + 1] == '_') {
                    i += 1;
                }
                out.push(Tok::Name(cs[st..=i].iter().collect()));
            }
            _ => return Err(LieError::Parse(s.to_string())),
        }
        i += 1;
    }
    Ok(out)
}

fn parse_sum(t: &[Tok], pos: &mut usize) -> Result<Expr, LieError> {
    let mut terms = Vec::new();
    let mut sign = Q::one();
    if t.get(*pos) == Some(&Tok::Minus) {
        sign = -sign;
        *pos += 1;
    }
    loop {
        let mut c = sign.clone();
        if let Some(Tok::Num(n)) = t.get(*pos) {
            c *= parse_q(n).map_err(|_| LieError::Parse(n.clone()))?;
            *pos += 1;
            if t.get(*pos) == Some(&Tok::Star) {
                *pos += 1;
            }
        }
        terms.push((c, parse_atom(t, pos)?));
        match t.get(*pos) {
            Some(Tok::Plus) => sign = Q::one(),
            Some(Tok::Minus) => sign = -Q::one(),
            _ => break,
        }
        *pos += 1;
    }
    if terms.len() == 1 && terms[0].0.is_one() {
        return Ok(terms.pop().unwrap().1);
    }
    Ok(Expr::Sum(terms))
}

fn parse_atom(t: &[Tok], pos: &mut usize) -> Result<Expr, LieError> {
    let bad = || LieError::Parse("unbalanced bracket expression".to_string());
    match t.get(*pos) {
        Some(Tok::Name(n)) => {
            *pos += 1;
            Ok(Expr::Gen(n.clone()))
        }
        Some(Tok::Open) => {
            *pos += 1;
            let a = parse_sum(t, pos)?;
            if t.get(*pos) != Some(&Tok::Comma) {
                return Err(bad());
            }
            *pos += 1;
            let b = parse_sum(t, pos)?;
            if t.get(*pos) != Some(&Tok::Close) {
                return Err(bad());
            }
            *pos += 1;
            Ok(Expr::Bracket(Box::new(a), Box::new(b)))
        }
        _ => Err(bad()),
    }
}

pub fn lie_normal_form(expr: &Expr, alphabet: &[String], max_weight: usize) -> Result<LieElement, LieError> {
    match expr {
        Expr::Gen(name) => {
            let i = alphabet.iter().position(|a| a == name).ok_or_else(|| LieError::Parse(name.clone()))?;
            Ok(LieElement::generator(alphabet, max_weight, i))
        }
        Expr::Bracket(a, b) => {
            lie_normal_form(a, alphabet, max_weight)?.bracket(&lie_normal_form(b, alphabet, max_weight)?)
        }
        Expr::Sum(ts) => {
            let mut acc = LieElement::zero(alphabet, max_weight);
            for (c, e) in ts {
                acc = acc.axpy(c, &lie_normal_form(e, alphabet, max_weight)?)?;
            }
            Ok(acc)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use exact_linalg::q;

    #[test]
    fn bracket_normal_forms() {
        let a = alphabet(&["x", "y"]);
        let e = lie_normal_form(&Expr::parse("[x,[x,y]]").unwrap(), &a, 5).unwrap();
        assert_eq!(e.terms().len(), 1);
        assert_eq!(e.coefficient(&[0, 0, 1]), q(1));
        let z = lie_normal_form(&Expr::parse("[x,x]").unwrap(), &a, 5).unwrap();
        assert!(z.is_zero());
        let s = lie_normal_form(&Expr::parse("[y,x] + [x,y] - 2*y").unwrap(), &a, 5).unwrap();
        assert_eq!(s.coefficient(&[1]), q(-2));
        assert_eq!(s.terms().len(), 1);
    }

    #[test]
    fn non_lie_is_rejected() {
        let a = alphabet(&["x", "y"]);
        let p: Poly<Q> = [(vec![0, 1], q(1))].into_iter().collect();
        assert!(LieElement::from_assoc(&a, 3, &p).is_err());
    }
}
