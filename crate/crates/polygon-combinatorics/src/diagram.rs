use serde::{Deserialize, Serialize};

use crate::chord::{chords_of, crosses, Chord};
use crate::PolygonError;

/// A monic monomial in the chord classes, stored with chords in
/// lexicographic order. Reordering signs are returned separately by
/// [`ChordDiagram::from_chords`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawDiagram")]
pub struct ChordDiagram {
    pub arity: usize,
    pub chords: Vec<Chord>,
}

#[derive(Deserialize)]
struct RawDiagram {
    arity: usize,
    chords: Vec<Chord>,
}

impl TryFrom<RawDiagram> for ChordDiagram {
    type Error = PolygonError;
    fn try_from(r: RawDiagram) -> Result<Self, Self::Error> {
        let (d, sign) = ChordDiagram::from_chords(r.arity, r.chords)?;
        if sign != 1 {
            return Err(PolygonError::NotCanonical);
        }
        Ok(d)
    }
}

/// Sign of the permutation sorting `xs`, counted by inversions.
pub(crate) fn sort_sign<T: Ord>(xs: &[T]) -> i32 {
    let mut inv = 0usize;
    for a in 0..xs.len() {
        for b in a + 1..xs.len() {
            if xs[a] > xs[b] {
                inv += 1;
            }
        }
    }
    if inv.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

impl ChordDiagram {
    pub fn empty(arity: usize) -> Self {
        ChordDiagram { arity, chords: Vec::new() }
    }

    /// Canonicalizes an ordered product of chords; returns the diagram and the
    /// sign of the sorting permutation.
    pub fn from_chords(arity: usize, chords: Vec<Chord>) -> Result<(Self, i32), PolygonError> {
        if arity < 2 {
            return Err(PolygonError::ArityTooSmall(arity));
        }
        for c in &chords {
            if !c.is_valid(arity) {
                return Err(PolygonError::InvalidChord { i: c.i as usize, j: c.j as usize, sides: arity + 1 });
            }
        }
        let sign = sort_sign(&chords);
        let mut sorted = chords;
        sorted.sort();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(PolygonError::RepeatedChord(w[0].i as usize, w[0].j as usize));
        }
        Ok((ChordDiagram { arity, chords: sorted }, sign))
    }

    pub fn from_pairs(arity: usize, pairs: &[(usize, usize)]) -> Result<(Self, i32), PolygonError> {
        let cs = pairs.iter().map(|&(i, j)| Chord::new(arity, i, j)).collect::<Result<Vec<_>, _>>()?;
        Self::from_chords(arity, cs)
    }

    pub fn degree(&self) -> usize {
        self.chords.len()
    }

    pub fn contains(&self, c: &Chord) -> bool {
        self.chords.binary_search(c).is_ok()
    }
}

impl std::fmt::Display for ChordDiagram {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.chords.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.chords.iter().map(|c| c.to_string()).collect();
        write!(f, "{}", parts.join("*"))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub is_gravity: bool,
    pub residual_chords: Vec<Chord>,
    pub is_prime: bool,
    pub residual_weight: usize,
}

pub(crate) fn gravity_ok(chords: &[Chord]) -> bool {
    for a in chords {
        for b in chords {
            // a = [i,j], b = [k,l] with i < k <= j < l
            if a.i < b.i && b.i <= a.j && a.j < b.j {
                if b.i == a.j {
                    return false;
                }
                let opp = Chord { i: b.i, j: a.j };
                if chords.contains(&opp) {
                    return false;
                }
            }
        }
    }
    true
}

pub(crate) fn residuals(chords: &[Chord]) -> Vec<Chord> {
    chords
        .iter()
        .filter(|a| !chords.iter().any(|b| crosses(a, b)))
        .copied()
        .collect()
}

pub fn classify(d: &ChordDiagram) -> Classification {
    let residual_chords = residuals(&d.chords);
    Classification {
        is_gravity: gravity_ok(&d.chords),
        is_prime: residual_chords.is_empty(),
        residual_weight: residual_chords.len(),
        residual_chords,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Filter {
    All,
    Gravity,
    PrimeGravity,
}

/// All canonical diagrams of the given degree passing `filter`, in
/// lexicographic order.
pub fn enumerate(n: usize, degree: usize, filter: Filter) -> Result<Vec<ChordDiagram>, PolygonError> {
    let all = chords_of(n)?;
    let mut out = Vec::new();
    let mut cur: Vec<Chord> = Vec::with_capacity(degree);
    fn rec(all: &[Chord], start: usize, left: usize, cur: &mut Vec<Chord>, filter: Filter, n: usize, out: &mut Vec<ChordDiagram>) {
        if left == 0 {
            if filter == Filter::PrimeGravity && !residuals(cur).is_empty() {
                return;
            }
            out.push(ChordDiagram { arity: n, chords: cur.clone() });
            return;
        }
        for k in start..all.len() {
            if all.len() - k < left {
                break;
            }
            cur.push(all[k]);
            // gravity violations never disappear when chords are added
            if filter == Filter::All || gravity_ok(cur) {
                rec(all, k + 1, left - 1, cur, filter, n, out);
            }
            cur.pop();
        }
    }
    rec(&all, 0, degree, &mut cur, filter, n, &mut out);
    Ok(out)
}

/// Coefficient of `t^d` in `prod_{k=2}^{n-1} (1 + k t)`.
pub fn gravity_count(n: usize, d: usize) -> u64 {
    let mut e = vec![0u64; n + 1];
    e[0] = 1;
    for k in 2..n.max(2) {
        for m in (1..=n).rev() {
            e[m] += e[m - 1] * k as u64;
        }
    }
    e.get(d).copied().unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dg(n: usize, p: &[(usize, usize)]) -> ChordDiagram {
        ChordDiagram::from_pairs(n, p).unwrap().0
    }

    #[test]
    fn classify_examples() {
        let pent = classify(&dg(4, &[(1, 3), (2, 4)]));
        assert!(pent.is_gravity && pent.is_prime);
        assert!(!classify(&dg(3, &[(1, 2), (2, 3)])).is_gravity);
        let single = classify(&dg(5, &[(2, 4)]));
        assert!(single.is_gravity && !single.is_prime);
        assert_eq!(single.residual_weight, 1);
    }

    #[test]
    fn enumeration_examples() {
        assert_eq!(enumerate(4, 2, Filter::PrimeGravity).unwrap(), vec![dg(4, &[(1, 3), (2, 4)])]);
        assert_eq!(enumerate(5, 2, Filter::PrimeGravity).unwrap().len(), 5);
        assert_eq!(enumerate(4, 2, Filter::Gravity).unwrap().len(), 6);
        assert_eq!(enumerate(4, 2, Filter::All).unwrap().len(), 10);
    }

    #[test]
    fn sorting_sign() {
        let (d, s) = ChordDiagram::from_pairs(4, &[(2, 4), (1, 3)]).unwrap();
        assert_eq!(d, dg(4, &[(1, 3), (2, 4)]));
        assert_eq!(s, -1);
        assert!(ChordDiagram::from_pairs(4, &[(1, 3), (1, 3)]).is_err());
    }

    #[test]
    fn counts() {
        assert_eq!((0..4).map(|d| gravity_count(4, d)).collect::<Vec<_>>(), vec![1, 5, 6, 0]);
        assert_eq!(gravity_count(7, 5), 720);
        assert_eq!(gravity_count(2, 0), 1);
    }
}
