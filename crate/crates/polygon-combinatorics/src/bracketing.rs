use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use crate::chord::Chord;
use crate::diagram::{classify, ChordDiagram};
use crate::PolygonError;

/// Iterated binary bracketing of indices, e.g. `[[1,3],[[2,4],5]]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Bracketing {
    Leaf(u8),
    Node(Box<Bracketing>, Box<Bracketing>),
}

impl Bracketing {
    pub fn lo(&self) -> u8 {
        match self {
            Bracketing::Leaf(k) => *k,
            Bracketing::Node(l, r) => l.lo().min(r.lo()),
        }
    }

    pub fn hi(&self) -> u8 {
        match self {
            Bracketing::Leaf(k) => *k,
            Bracketing::Node(l, r) => l.hi().max(r.hi()),
        }
    }

    pub fn leaves(&self) -> Vec<u8> {
        match self {
            Bracketing::Leaf(k) => vec![*k],
            Bracketing::Node(l, r) => {
                let mut v = l.leaves();
                v.extend(r.leaves());
                v
            }
        }
    }

    fn brackets<'a>(&'a self, out: &mut Vec<&'a Bracketing>) {
        if let Bracketing::Node(l, r) = self {
            out.push(self);
            l.brackets(out);
            r.brackets(out);
        }
    }

    /// Parses `[[1,3],[[2,4],5]]`.
    pub fn parse(s: &str) -> Result<Self, PolygonError> {
        let toks: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
        let mut pos = 0;
        let b = parse_rec(&toks, &mut pos)?;
        if pos != toks.len() {
            return Err(PolygonError::Bracketing(format!("trailing input in {s:?}")));
        }
        Ok(b)
    }
}

fn parse_rec(t: &[char], pos: &mut usize) -> Result<Bracketing, PolygonError> {
    let err = |m: &str| PolygonError::Bracketing(m.to_string());
    match t.get(*pos) {
        Some('[') => {
            *pos += 1;
            let l = parse_rec(t, pos)?;
            if t.get(*pos) != Some(&',') {
                return Err(err("expected ','"));
            }
            *pos += 1;
            let r = parse_rec(t, pos)?;
            if t.get(*pos) != Some(&']') {
                return Err(err("expected ']'"));
            }
            *pos += 1;
            Ok(Bracketing::Node(Box::new(l), Box::new(r)))
        }
        Some(c) if c.is_ascii_digit() => {
            let start = *pos;
            while t.get(*pos).is_some_and(|c| c.is_ascii_digit()) {
                *pos += 1;
            }
            let s: String = t[start..*pos].iter().collect();
            s.parse().map(Bracketing::Leaf).map_err(|_| err("bad index"))
        }
        _ => Err(err("unexpected token")),
    }
}

impl std::fmt::Display for Bracketing {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Bracketing::Leaf(k) => write!(f, "{k}"),
            Bracketing::Node(l, r) => write!(f, "[{l},{r}]"),
        }
    }
}

/// All bracketings of `idx` (sorted) with the smallest index in the left
/// factor and the largest in the right factor of every bracket.
fn bracketings_of(idx: &[u8]) -> Vec<Bracketing> {
    if idx.len() == 1 {
        return vec![Bracketing::Leaf(idx[0])];
    }
    let inner = &idx[1..idx.len() - 1];
    let mut out = Vec::new();
    for mask in 0u32..(1 << inner.len()) {
        let mut left = vec![idx[0]];
        let mut right = Vec::new();
        for (k, &x) in inner.iter().enumerate() {
            if mask >> k & 1 == 1 {
                left.push(x);
            } else {
                right.push(x);
            }
        }
        right.push(idx[idx.len() - 1]);
        for l in bracketings_of(&left) {
            for r in bracketings_of(&right) {
                out.push(Bracketing::Node(Box::new(l.clone()), Box::new(r)));
            }
        }
    }
    out
}

/// The set L(n), sorted.
pub fn all_bracketings(n: usize) -> Vec<Bracketing> {
    let idx: Vec<u8> = (1..=n as u8).collect();
    let mut v = bracketings_of(&idx);
    v.sort();
    v
}

fn is_interval(mut xs: Vec<u8>) -> bool {
    xs.sort_unstable();
    xs.windows(2).all(|w| w[1] == w[0] + 1)
}

/// Only the outermost bracket covers a subinterval of [n].
pub fn is_prime_bracketing(b: &Bracketing) -> bool {
    let mut bs = Vec::new();
    b.brackets(&mut bs);
    bs.iter().skip(1).all(|x| !is_interval(x.leaves()))
}

/// Each inner bracket becomes the chord `{min, max}`; the outer bracket is
/// the distinguished side.
pub fn bracketing_to_diagram(b: &Bracketing) -> Result<ChordDiagram, PolygonError> {
    let n = b.leaves().len();
    let mut bs = Vec::new();
    b.brackets(&mut bs);
    let chords: Vec<Chord> = bs
        .iter()
        .skip(1)
        .map(|x| Chord::new(n, x.lo() as usize, x.hi() as usize))
        .collect::<Result<_, _>>()?;
    Ok(ChordDiagram::from_chords(n, chords)?.0)
}

type Table = HashMap<ChordDiagram, Bracketing>;

fn table(n: usize) -> Result<Table, PolygonError> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Table>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(t) = cache.lock().unwrap().get(&n) {
        return Ok(t.clone());
    }
    let mut t = HashMap::new();
    for b in all_bracketings(n) {
        t.insert(bracketing_to_diagram(&b)?, b);
    }
    cache.lock().unwrap().insert(n, t.clone());
    Ok(t)
}

/// Inverse of [`bracketing_to_diagram`] on top-degree gravity diagrams.
pub fn top_gravity_to_bracketing(d: &ChordDiagram) -> Result<Bracketing, PolygonError> {
    let n = d.arity;
    if d.degree() + 2 != n {
        return Err(PolygonError::NotTopDegree { expected: n.saturating_sub(2), got: d.degree() });
    }
    if !classify(d).is_gravity {
        return Err(PolygonError::NotGravity);
    }
    if n == 2 {
        return Ok(Bracketing::Node(Box::new(Bracketing::Leaf(1)), Box::new(Bracketing::Leaf(2))));
    }
    table(n)?.get(d).cloned().ok_or(PolygonError::NotGravity)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn worked_example() {
        let d = ChordDiagram::from_pairs(5, &[(1, 3), (2, 4), (2, 5)]).unwrap().0;
        let b = top_gravity_to_bracketing(&d).unwrap();
        assert_eq!(b.to_string(), "[[1,3],[[2,4],5]]");
        assert_eq!(Bracketing::parse("[[1,3],[[2,4],5]]").unwrap(), b);
        assert!(is_prime_bracketing(&b));
    }

    #[test]
    fn l3() {
        let l: Vec<String> = all_bracketings(3).iter().map(|b| b.to_string()).collect();
        assert_eq!(l, ["[1,[2,3]]", "[[1,2],3]"]);
    }
}
