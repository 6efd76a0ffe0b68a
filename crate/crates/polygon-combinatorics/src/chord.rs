use serde::{Deserialize, Serialize};

use crate::PolygonError;

/// A chord `{i,j}`; the arity lives on the enclosing diagram or polygon.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "[usize; 2]", try_from = "[usize; 2]")]
pub struct Chord {
    pub i: u8,
    pub j: u8,
}

impl From<Chord> for [usize; 2] {
    fn from(c: Chord) -> Self {
        [c.i as usize, c.j as usize]
    }
}

impl TryFrom<[usize; 2]> for Chord {
    type Error = PolygonError;
    fn try_from(p: [usize; 2]) -> Result<Self, Self::Error> {
        if p[0] == 0 || p[0] >= p[1] || p[1] > 255 {
            return Err(PolygonError::InvalidChord { i: p[0], j: p[1], sides: 0 });
        }
        Ok(Chord { i: p[0] as u8, j: p[1] as u8 })
    }
}

impl Chord {
    pub fn new(n: usize, i: usize, j: usize) -> Result<Self, PolygonError> {
        if n < 2 {
            return Err(PolygonError::ArityTooSmall(n));
        }
        if !(1 <= i && i < j && j <= n) || (i == 1 && j == n) {
            return Err(PolygonError::InvalidChord { i, j, sides: n + 1 });
        }
        Ok(Chord { i: i as u8, j: j as u8 })
    }

    pub fn is_valid(&self, n: usize) -> bool {
        let (i, j) = (self.i as usize, self.j as usize);
        1 <= i && i < j && j <= n && !(i == 1 && j == n)
    }

    /// Number of sides enclosed, `j - i + 1`.
    pub fn len(&self) -> usize {
        (self.j - self.i) as usize + 1
    }

    pub fn contains(&self, other: &Chord) -> bool {
        self.i <= other.i && other.j <= self.j
    }
}

impl std::fmt::Display for Chord {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "c{}{}", self.i, self.j)
    }
}

/// Interleaving test. `{1,2}` and `{2,3}` do cross: the first ends at side 2
/// which is where the second starts.
pub fn crosses(a: &Chord, b: &Chord) -> bool {
    (a.i < b.i && b.i <= a.j && a.j < b.j) || (b.i < a.i && a.i <= b.j && b.j < a.j)
}

/// All chords of the (n+1)-gon, in lexicographic order.
pub fn chords_of(n: usize) -> Result<Vec<Chord>, PolygonError> {
    if n < 2 {
        return Err(PolygonError::ArityTooSmall(n));
    }
    let mut out = Vec::with_capacity(n * (n - 1) / 2);
    for i in 1..=n {
        for j in i + 1..=n {
            if !(i == 1 && j == n) {
                out.push(Chord { i: i as u8, j: j as u8 });
            }
        }
    }
    Ok(out)
}

/// Cached chord list and crossing masks for one arity (n <= 12 so that the
/// chord count fits in a `u64`).
#[derive(Clone, Debug)]
pub struct Polygon {
    pub n: usize,
    pub chords: Vec<Chord>,
    index: Vec<Vec<Option<u8>>>,
    cross: Vec<u64>,
}

impl Polygon {
    pub fn new(n: usize) -> Result<Self, PolygonError> {
        let chords = chords_of(n)?;
        assert!(chords.len() <= 64, "arity {n} too large for bit masks");
        let mut index = vec![vec![None; n + 2]; n + 2];
        for (k, c) in chords.iter().enumerate() {
            index[c.i as usize][c.j as usize] = Some(k as u8);
        }
        let cross = chords
            .iter()
            .map(|a| {
                chords
                    .iter()
                    .enumerate()
                    .filter(|(_, b)| crosses(a, b))
                    .fold(0u64, |m, (k, _)| m | (1 << k))
            })
            .collect();
        Ok(Polygon { n, chords, index, cross })
    }

    pub fn len(&self) -> usize {
        self.chords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chords.is_empty()
    }

    pub fn index_of(&self, c: &Chord) -> Option<usize> {
        let (i, j) = (c.i as usize, c.j as usize);
        if j > self.n {
            return None;
        }
        self.index[i][j].map(|k| k as usize)
    }

    pub fn idx(&self, i: usize, j: usize) -> Option<usize> {
        if i == 0 || j > self.n || i >= j {
            return None;
        }
        self.index[i][j].map(|k| k as usize)
    }

    /// Mask of chords crossing chord `k`.
    pub fn cross_mask(&self, k: usize) -> u64 {
        self.cross[k]
    }

    pub fn all_mask(&self) -> u64 {
        if self.chords.len() == 64 {
            u64::MAX
        } else {
            (1u64 << self.chords.len()) - 1
        }
    }

    pub fn mask_to_chords(&self, m: u64) -> Vec<Chord> {
        (0..self.chords.len()).filter(|k| m >> k & 1 == 1).map(|k| self.chords[k]).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_chord_sets() {
        assert!(chords_of(2).unwrap().is_empty());
        assert_eq!(chords_of(3).unwrap(), vec![Chord { i: 1, j: 2 }, Chord { i: 2, j: 3 }]);
        let c4: Vec<String> = chords_of(4).unwrap().iter().map(|c| c.to_string()).collect();
        assert_eq!(c4, ["c12", "c13", "c23", "c24", "c34"]);
        assert!(chords_of(1).is_err());
    }

    #[test]
    fn crossing_examples() {
        let c = |i, j| Chord { i, j };
        assert!(crosses(&c(1, 3), &c(2, 4)));
        assert!(!crosses(&c(1, 2), &c(1, 3)));
        assert!(crosses(&c(1, 2), &c(2, 3)));
        assert!(!crosses(&c(1, 3), &c(1, 3)));
        assert!(!crosses(&c(1, 2), &c(3, 4)));
    }

    #[test]
    fn validation() {
        assert!(Chord::new(4, 1, 4).is_err());
        assert!(Chord::new(4, 3, 3).is_err());
        assert!(Chord::new(4, 2, 5).is_err());
        assert_eq!(Chord::new(4, 2, 4).unwrap(), Chord { i: 2, j: 4 });
    }
}
