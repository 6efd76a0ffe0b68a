use std::collections::BTreeSet;

use crate::chord::{Chord, Polygon};
use crate::PolygonError;

/// A Galois-closed completely crossing pair: `a = b^perp`, `b = a^perp`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct RelationPair {
    pub a: Vec<Chord>,
    pub b: Vec<Chord>,
}

/// Chords crossing every member of `s` (as masks over `p.chords`).
pub fn perp(p: &Polygon, s: u64) -> u64 {
    let mut m = p.all_mask();
    for k in 0..p.len() {
        if s >> k & 1 == 1 {
            m &= p.cross_mask(k);
        }
    }
    m
}

fn pairs_from_closed(p: &Polygon, closed: impl IntoIterator<Item = u64>) -> Vec<RelationPair> {
    let mut out = BTreeSet::new();
    for a in closed {
        let b = perp(p, a);
        if a == 0 || b == 0 || perp(p, b) != a {
            continue;
        }
        let (x, y) = (p.mask_to_chords(a), p.mask_to_chords(b));
        let pair = if x <= y { RelationPair { a: x, b: y } } else { RelationPair { a: y, b: x } };
        out.insert(pair);
    }
    out.into_iter().collect()
}

/// Every closed set is an intersection of the sets `{c}^perp`, so closing
/// that family under intersection enumerates the whole concept lattice.
pub fn relation_pairs(n: usize) -> Result<Vec<RelationPair>, PolygonError> {
    let p = Polygon::new(n)?;
    let mut family: BTreeSet<u64> = (0..p.len()).map(|k| p.cross_mask(k)).filter(|&m| m != 0).collect();
    loop {
        let cur: Vec<u64> = family.iter().copied().collect();
        let mut grew = false;
        for (x, &a) in cur.iter().enumerate() {
            for &b in &cur[x + 1..] {
                let c = a & b;
                if c != 0 && family.insert(c) {
                    grew = true;
                }
            }
        }
        if !grew {
            break;
        }
    }
    Ok(pairs_from_closed(&p, family))
}

/// Pairs coming from a cross-ratio: cut the vertices of the polygon into four
/// cyclic blocks and take the diagonals joining opposite blocks. These are
/// the pairs whose relation `prod_A u + prod_B u = 1` holds. Up to the
/// heptagon they coincide with the closed pairs; from the octagon on the
/// closed pairs also contain stars such as `{c25, c47}, {c14, c36}`.
pub fn cross_ratio_pairs(n: usize) -> Result<Vec<RelationPair>, PolygonError> {
    let p = Polygon::new(n)?;
    let verts = n + 1;
    // chord [i,j] is the diagonal between vertices i-1 and j
    let diag = |x: usize, y: usize| -> Option<usize> {
        let (u, v) = (x.min(y), x.max(y));
        p.idx(u + 1, v)
    };
    let mask = |x: &[usize], y: &[usize]| -> u64 {
        let mut m = 0u64;
        for &u in x {
            for &v in y {
                if let Some(k) = diag(u, v) {
                    m |= 1 << k;
                }
            }
        }
        m
    };
    let mut out = BTreeSet::new();
    for a in 0..verts {
        for b in a + 1..verts {
            for c in b + 1..verts {
                for d in c + 1..verts {
                    let blocks: [Vec<usize>; 4] = [
                        (a..b).collect(),
                        (b..c).collect(),
                        (c..d).collect(),
                        (d..verts).chain(0..a).collect(),
                    ];
                    let (x, y) = (mask(&blocks[0], &blocks[2]), mask(&blocks[1], &blocks[3]));
                    let (x, y) = (p.mask_to_chords(x), p.mask_to_chords(y));
                    out.insert(if x <= y { RelationPair { a: x, b: y } } else { RelationPair { a: y, b: x } });
                }
            }
        }
    }
    Ok(out.into_iter().collect())
}

/// Brute force over all subsets; only for small arities.
pub fn relation_pairs_brute(n: usize) -> Result<Vec<RelationPair>, PolygonError> {
    let p = Polygon::new(n)?;
    assert!(p.len() <= 20, "brute force is exponential in the chord count");
    Ok(pairs_from_closed(&p, 1..=p.all_mask()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ch(v: &[(u8, u8)]) -> Vec<Chord> {
        v.iter().map(|&(i, j)| Chord { i, j }).collect()
    }

    fn has(ps: &[RelationPair], a: &[(u8, u8)], b: &[(u8, u8)]) -> bool {
        let (a, b) = (ch(a), ch(b));
        ps.iter().any(|p| (p.a == a && p.b == b) || (p.a == b && p.b == a))
    }

    #[test]
    fn pentagon_pairs() {
        let ps = relation_pairs(4).unwrap();
        assert!(has(&ps, &[(2, 4)], &[(1, 2), (1, 3)]));
        assert!(has(&ps, &[(1, 3)], &[(2, 4), (3, 4)]));
        assert_eq!(ps.len(), 5);
    }

    #[test]
    fn square_has_one_pair() {
        let ps = relation_pairs(3).unwrap();
        assert_eq!(ps, vec![RelationPair { a: ch(&[(1, 2)]), b: ch(&[(2, 3)]) }]);
    }

    #[test]
    fn octagon_star_is_closed_but_not_a_cross_ratio() {
        let closed = relation_pairs(7).unwrap();
        let cr = cross_ratio_pairs(7).unwrap();
        assert_eq!((closed.len(), cr.len()), (71, 70));
        let extra: Vec<_> = closed.iter().filter(|p| !cr.contains(p)).collect();
        assert_eq!(extra, vec![&RelationPair { a: ch(&[(1, 4), (3, 6)]), b: ch(&[(2, 5), (4, 7)]) }]);
    }

    #[test]
    fn missed_by_singleton_closures() {
        assert!(has(&relation_pairs(5).unwrap(), &[(1, 2), (1, 3)], &[(2, 4), (2, 5)]));
    }
}
