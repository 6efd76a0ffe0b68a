use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};

use crate::{SparseVec, Q};

/// Incremental row echelon form with a caller-chosen column priority.
///
/// The pivot of each stored row is its entry of smallest priority. Reducing a
/// vector eliminates pivot columns in increasing priority, so the result is
/// the unique representative supported on non-pivot columns.
#[derive(Clone, Debug)]
pub struct Echelon {
    dim: usize,
    prio: Vec<usize>,
    by_prio: Vec<usize>,
    rows: Vec<SparseVec>,
    pivot_row: HashMap<usize, usize>,
}

impl Echelon {
    pub fn new(dim: usize) -> Self {
        Self::with_order(dim, (0..dim).collect())
    }

    /// `order` lists every column once, most preferred pivot first.
    pub fn with_order(dim: usize, order: Vec<usize>) -> Self {
        assert_eq!(order.len(), dim, "order must be a permutation of the columns");
        let mut prio = vec![usize::MAX; dim];
        for (p, &c) in order.iter().enumerate() {
            assert!(prio[c] == usize::MAX, "repeated column {c} in order");
            prio[c] = p;
        }
        Echelon { dim, prio, by_prio: order, rows: Vec::new(), pivot_row: HashMap::new() }
    }

    /// Pivots avoid `preferred` columns for as long as possible, so those
    /// survive as coordinates of reduced vectors.
    pub fn avoiding(dim: usize, preferred: &[bool]) -> Self {
        let mut order: Vec<usize> = (0..dim).filter(|&c| !preferred[c]).collect();
        order.extend((0..dim).filter(|&c| preferred[c]));
        Self::with_order(dim, order)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.pivot_row.contains_key(&col)
    }

    pub fn pivots(&self) -> Vec<usize> {
        let mut p: Vec<usize> = self.pivot_row.keys().copied().collect();
        p.sort_unstable();
        p
    }

    pub fn rows(&self) -> &[SparseVec] {
        &self.rows
    }

    fn reduce_map(&self, v: &SparseVec) -> BTreeMap<usize, Q> {
        let mut acc: BTreeMap<usize, Q> = v.entries().iter().map(|(c, x)| (self.prio[*c], x.clone())).collect();
        let mut out = BTreeMap::new();
        while let Some((p, x)) = acc.pop_first() {
            let col = self.by_prio[p];
            match self.pivot_row.get(&col) {
                None => {
                    out.insert(col, x);
                }
                Some(&r) => {
                    for (c, y) in self.rows[r].entries() {
                        if *c == col {
                            continue;
                        }
                        let e = acc.entry(self.prio[*c]).or_insert_with(Q::zero);
                        *e -= &x * y;
                        if e.is_zero() {
                            acc.remove(&self.prio[*c]);
                        }
                    }
                }
            }
        }
        out
    }

    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        assert_eq!(v.dim, self.dim);
        let m = self.reduce_map(v);
        SparseVec::from_pairs(self.dim, m).expect("indices in range")
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_zero()
    }

    /// Adds `v` to the span; returns false if it was already dependent.
    pub fn insert(&mut self, v: &SparseVec) -> bool {
        let r = self.reduce(v);
        if r.is_zero() {
            return false;
        }
        let (pcol, px) = r
            .entries()
            .iter()
            .min_by_key(|e| self.prio[e.0])
            .map(|(c, x)| (*c, x.clone()))
            .unwrap();
        let mut r = r;
        if !px.is_one() {
            r.scale(&(Q::one() / px));
        }
        self.pivot_row.insert(pcol, self.rows.len());
        self.rows.push(r);
        true
    }

    /// Fully reduced rows sorted by pivot column (pivot entries are 1).
    pub fn reduced_rows(&self) -> Vec<(usize, SparseVec)> {
        let mut out: Vec<(usize, SparseVec)> = self
            .pivot_row
            .iter()
            .map(|(&col, &r)| {
                let mut tail = self.rows[r].clone();
                tail.axpy(&-Q::one(), &SparseVec::unit(self.dim, col));
                let mut row = self.reduce(&tail);
                row.axpy(&Q::one(), &SparseVec::unit(self.dim, col));
                (col, row)
            })
            .collect();
        out.sort_by_key(|e| e.0);
        out
    }
}

/// Representative of `v` modulo `span` supported off the pivot columns, where
/// pivots are taken outside `preferred` whenever possible.
pub fn reduce_modulo(span: &[SparseVec], v: &SparseVec, preferred: &[usize]) -> SparseVec {
    let mut mask = vec![false; v.dim];
    for &p in preferred {
        mask[p] = true;
    }
    let mut e = Echelon::avoiding(v.dim, &mask);
    for s in span {
        e.insert(s);
    }
    e.reduce(v)
}
