use num_traits::{One, Zero};

use crate::{Echelon, LinalgError, SparseVec, Q};

/// Row-major sparse matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<SparseVec>,
}

impl SparseMatrix {
    pub fn new(cols: usize) -> Self {
        SparseMatrix { rows: 0, cols, data: Vec::new() }
    }

    pub fn from_rows(cols: usize, rows: Vec<SparseVec>) -> Result<Self, LinalgError> {
        for r in &rows {
            if r.dim != cols {
                return Err(LinalgError::Dim { expected: cols, got: r.dim });
            }
        }
        Ok(SparseMatrix { rows: rows.len(), cols, data: rows })
    }

    pub fn from_dense(rows: &[Vec<Q>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let data: Vec<SparseVec> = rows.iter().map(|r| SparseVec::from_dense(r)).collect();
        SparseMatrix { rows: data.len(), cols, data }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let d: Vec<Vec<Q>> = rows.iter().map(|r| r.iter().map(|&x| Q::from_integer(x.into())).collect()).collect();
        Self::from_dense(&d)
    }

    pub fn push_row(&mut self, r: SparseVec) -> Result<(), LinalgError> {
        if r.dim != self.cols {
            return Err(LinalgError::Dim { expected: self.cols, got: r.dim });
        }
        self.data.push(r);
        self.rows += 1;
        Ok(())
    }

    pub fn row(&self, i: usize) -> &SparseVec {
        &self.data[i]
    }

    pub fn row_vecs(&self) -> &[SparseVec] {
        &self.data
    }

    pub fn get(&self, i: usize, j: usize) -> Q {
        self.data[i].get(j)
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(|r| r.nnz()).sum()
    }

    pub fn mul_vec(&self, v: &SparseVec) -> SparseVec {
        assert_eq!(v.dim, self.cols);
        let pairs: Vec<(usize, Q)> = self
            .data
            .iter()
            .enumerate()
            .map(|(i, r)| (i, r.dot(v)))
            .filter(|(_, x)| !x.is_zero())
            .collect();
        SparseVec::from_pairs(self.rows, pairs).unwrap()
    }

    pub fn to_dense(&self) -> Vec<Vec<Q>> {
        self.data.iter().map(|r| r.to_dense()).collect()
    }
}

fn echelon_of(m: &SparseMatrix) -> Echelon {
    let mut e = Echelon::new(m.cols);
    for r in m.row_vecs() {
        e.insert(r);
    }
    e
}

/// Reduced row echelon form and the strictly increasing pivot list.
pub fn rref(m: &SparseMatrix) -> (SparseMatrix, Vec<usize>) {
    let e = echelon_of(m);
    let rows = e.reduced_rows();
    let pivots = rows.iter().map(|r| r.0).collect();
    let out = SparseMatrix::from_rows(m.cols, rows.into_iter().map(|r| r.1).collect()).unwrap();
    (out, pivots)
}

pub fn rank(m: &SparseMatrix) -> usize {
    echelon_of(m).rank()
}

/// One kernel vector per free column, with a 1 at that column.
pub fn kernel_basis(m: &SparseMatrix) -> Vec<SparseVec> {
    let (r, pivots) = rref(m);
    let mut is_pivot = vec![false; m.cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    (0..m.cols)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut pairs = vec![(f, Q::one())];
            for (row, &p) in r.row_vecs().iter().zip(&pivots) {
                let x = row.get(f);
                if !x.is_zero() {
                    pairs.push((p, -x));
                }
            }
            SparseVec::from_pairs(m.cols, pairs).unwrap()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    #[test]
    fn empty_and_identity() {
        let (r, p) = rref(&SparseMatrix::new(0));
        assert_eq!((r.rows, p.len()), (0, 0));
        let id = SparseMatrix::from_i64(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        let (r, p) = rref(&id);
        assert_eq!(r, id);
        assert_eq!(p, vec![0, 1, 2]);
        assert!(kernel_basis(&id).is_empty());
    }

    #[test]
    fn hand_examples() {
        let m = SparseMatrix::from_i64(&[&[1, 2], &[2, 4]]);
        assert_eq!(rank(&m), 1);
        assert_eq!(rref(&m).1, vec![0]);
        let m = SparseMatrix::from_i64(&[&[1, 1, 0], &[0, 1, 1]]);
        assert_eq!(rank(&m), 2);
        let k = kernel_basis(&m);
        assert_eq!(k.len(), 1);
        assert_eq!(k[0].to_dense(), vec![q(1), q(-1), q(1)]);
        let z = SparseMatrix::from_i64(&[&[0, 0, 0], &[0, 0, 0]]);
        assert_eq!((rank(&z), kernel_basis(&z).len()), (0, 3));
    }
}
