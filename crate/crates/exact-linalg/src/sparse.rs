use num_traits::Zero;

use crate::{LinalgError, Q};

/// Sparse vector with entries sorted by index and no stored zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct SparseVec {
    pub dim: usize,
    entries: Vec<(usize, Q)>,
}

impl SparseVec {
    pub fn zero(dim: usize) -> Self {
        SparseVec { dim, entries: Vec::new() }
    }

    /// Builds from unsorted pairs; repeated indices are summed.
    pub fn from_pairs(dim: usize, pairs: impl IntoIterator<Item = (usize, Q)>) -> Result<Self, LinalgError> {
        let mut v: Vec<(usize, Q)> = pairs.into_iter().collect();
        for (i, _) in &v {
            if *i >= dim {
                return Err(LinalgError::Bounds { index: *i, dim });
            }
        }
        v.sort_by_key(|e| e.0);
        let mut entries: Vec<(usize, Q)> = Vec::with_capacity(v.len());
        for (i, x) in v {
            match entries.last_mut() {
                Some((j, y)) if *j == i => *y += x,
                _ => entries.push((i, x)),
            }
        }
        entries.retain(|e| !e.1.is_zero());
        Ok(SparseVec { dim, entries })
    }

    pub fn from_dense(row: &[Q]) -> Self {
        let entries = row
            .iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(|(i, x)| (i, x.clone()))
            .collect();
        SparseVec { dim: row.len(), entries }
    }

    pub fn unit(dim: usize, i: usize) -> Self {
        SparseVec { dim, entries: vec![(i, Q::from_integer(1.into()))] }
    }

    pub fn entries(&self) -> &[(usize, Q)] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<(usize, Q)> {
        self.entries
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, i: usize) -> Q {
        match self.entries.binary_search_by_key(&i, |e| e.0) {
            Ok(k) => self.entries[k].1.clone(),
            Err(_) => Q::zero(),
        }
    }

    pub fn to_dense(&self) -> Vec<Q> {
        let mut out = vec![Q::zero(); self.dim];
        for (i, x) in &self.entries {
            out[*i] = x.clone();
        }
        out
    }

    pub fn scale(&mut self, c: &Q) {
        if c.is_zero() {
            self.entries.clear();
            return;
        }
        for e in &mut self.entries {
            e.1 *= c;
        }
    }

    /// `self += c * other`.
    pub fn axpy(&mut self, c: &Q, other: &SparseVec) {
        if c.is_zero() || other.entries.is_empty() {
            return;
        }
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let mut a = std::mem::take(&mut self.entries).into_iter().peekable();
        let mut b = other.entries.iter().peekable();
        loop {
            match (a.peek(), b.peek()) {
                (Some(x), Some(y)) if x.0 == y.0 => {
                    let (i, v) = a.next().unwrap();
                    let (_, w) = b.next().unwrap();
                    let s = v + c * w;
                    if !s.is_zero() {
                        out.push((i, s));
                    }
                }
                (Some(x), Some(y)) if x.0 < y.0 => out.push(a.next().unwrap()),
                (Some(_), Some(_)) | (None, Some(_)) => {
                    let (j, w) = b.next().unwrap();
                    out.push((*j, c * w));
                }
                (Some(_), None) => out.push(a.next().unwrap()),
                (None, None) => break,
            }
        }
        self.entries = out;
    }

    pub fn dot(&self, other: &SparseVec) -> Q {
        let mut s = Q::zero();
        let (mut i, mut j) = (0, 0);
        while i < self.entries.len() && j < other.entries.len() {
            let (a, b) = (&self.entries[i], &other.entries[j]);
            if a.0 == b.0 {
                s += &a.1 * &b.1;
                i += 1;
                j += 1;
            } else if a.0 < b.0 {
                i += 1;
            } else {
                j += 1;
            }
        }
        s
    }
}
