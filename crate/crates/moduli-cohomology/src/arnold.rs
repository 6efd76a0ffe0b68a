//! Fast normal forms through the Arnold presentation.
//!
//! `M_0(n+1)` is also a hyperplane-arrangement complement, so its cohomology
//! has the no-broken-circuit basis in the classes `omega_ab = dlog(z_a - z_b)`.
//! Each `alpha_c` expands into four `omega`s. Expressing gravity monomials in
//! the nbc basis gives an invertible square matrix whose inverse turns any
//! form into gravity coordinates without building the relation span.

use std::collections::{BTreeMap, HashMap};

use exact_linalg::exec::{self, Exec};
use exact_linalg::{Echelon, SparseVec, Q};
use polygon_combinatorics::{enumerate, Chord, ChordDiagram, Filter};

use crate::{Form, ModuliError};

type Omega = (u8, u8);
pub type NbcMonomial = Vec<Omega>;

// alpha_ij on the (n+1)-gon in terms of omega on points 1..n (n+1 at infinity).
fn alpha_omega(n: usize, c: Chord) -> Vec<(Omega, i64)> {
    let big = n as i64 + 1;
    let cyc = |a: i64| (a - 1).rem_euclid(big) + 1;
    let (i, j) = (c.i as i64, c.j as i64);
    let mut out: BTreeMap<Omega, i64> = BTreeMap::new();
    for (a, b, s) in [(i, j, 1), (i - 1, j + 1, 1), (i - 1, j, -1), (i, j + 1, -1)] {
        let (a, b) = (cyc(a), cyc(b));
        if a == b || a == big || b == big {
            continue;
        }
        let (a, b) = if a < b { (a, b) } else { (b, a) };
        *out.entry((a as u8, b as u8)).or_insert(0) += s;
    }
    out.into_iter().filter(|(_, v)| *v != 0).collect()
}

// Put 1 and n first so that omega_12 (the collapsed pair) can be dropped.
fn relabel(n: usize, p: u8) -> u8 {
    match p as usize {
        1 => 1,
        x if x == n => 2,
        x => (x + 1) as u8,
    }
}

fn sort_by_upper(fs: &mut [Omega]) -> i64 {
    let mut sign = 1;
    for a in 1..fs.len() {
        let mut b = a;
        while b > 0 && (fs[b].1, fs[b].0) < (fs[b - 1].1, fs[b - 1].0) {
            fs.swap(b, b - 1);
            sign = -sign;
            b -= 1;
        }
    }
    sign
}

fn reduce_monomial(mono: Vec<Omega>, coeff: i64, out: &mut BTreeMap<NbcMonomial, i64>) {
    let mut stack = vec![(mono, coeff)];
    while let Some((mut fs, s)) = stack.pop() {
        let s = s * sort_by_upper(&mut fs);
        if fs.windows(2).any(|w| w[0] == w[1]) {
            continue;
        }
        match (0..fs.len().saturating_sub(1)).find(|&k| fs[k].1 == fs[k + 1].1) {
            None => {
                if fs.contains(&(1, 2)) {
                    continue;
                }
                *out.entry(fs).or_insert(0) += s;
            }
            Some(k) => {
                // w_ik w_jk = w_ij w_jk - w_ij w_ik
                let (i, top) = fs[k];
                let j = fs[k + 1].0;
                let mut a = fs.clone();
                a[k] = (i, j);
                a[k + 1] = (j, top);
                let mut b = fs;
                b[k] = (i, j);
                b[k + 1] = (i, top);
                stack.push((a, s));
                stack.push((b, -s));
            }
        }
    }
}

/// Coordinates of a chord monomial in the nbc basis.
pub fn nbc_vector(d: &ChordDiagram) -> BTreeMap<NbcMonomial, i64> {
    let n = d.arity;
    let expansions: Vec<Vec<(Omega, i64)>> = d
        .chords
        .iter()
        .map(|c| {
            alpha_omega(n, *c)
                .into_iter()
                .map(|((a, b), v)| {
                    let (x, y) = (relabel(n, a), relabel(n, b));
                    ((x.min(y), x.max(y)), v)
                })
                .collect()
        })
        .collect();
    let mut out = BTreeMap::new();
    let mut idx = vec![0usize; expansions.len()];
    if expansions.iter().any(|e| e.is_empty()) {
        return out;
    }
    loop {
        let mut co = 1;
        let mut fs = Vec::with_capacity(idx.len());
        for (e, &k) in expansions.iter().zip(&idx) {
            co *= e[k].1;
            fs.push(e[k].0);
        }
        reduce_monomial(fs, co, &mut out);
        // odometer
        let mut p = idx.len();
        loop {
            if p == 0 {
                out.retain(|_, v| *v != 0);
                return out;
            }
            p -= 1;
            idx[p] += 1;
            if idx[p] < expansions[p].len() {
                break;
            }
            idx[p] = 0;
        }
    }
}

fn nbc_basis(n: usize, degree: usize) -> Vec<NbcMonomial> {
    fn go(n: u8, next: u8, left: usize, cur: &mut NbcMonomial, out: &mut Vec<NbcMonomial>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for b in next..=n {
            for a in 1..b {
                cur.push((a, b));
                go(n, b + 1, left - 1, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(n as u8, 3, degree, &mut Vec::new(), &mut out);
    out
}

/// Gravity coordinates of every nbc basis element for one (arity, degree).
#[derive(Clone, Debug)]
pub struct ArnoldContext {
    pub n: usize,
    pub degree: usize,
    pub gravity: Vec<ChordDiagram>,
    nbc_index: HashMap<NbcMonomial, usize>,
    inverse: Vec<SparseVec>,
}

impl ArnoldContext {
    pub fn build(n: usize, degree: usize, exec: Exec) -> Result<Self, ModuliError> {
        let gravity = enumerate(n, degree, Filter::Gravity)?;
        let basis = nbc_basis(n, degree);
        let dim = gravity.len();
        if basis.len() != dim {
            return Err(ModuliError::Mismatch(format!("nbc basis {} vs gravity {} at ({n}, {degree})", basis.len(), dim)));
        }
        let nbc_index: HashMap<NbcMonomial, usize> = basis.into_iter().enumerate().map(|(k, m)| (m, k)).collect();
        let rows = exec::map(exec, &gravity, |g| {
            let v = nbc_vector(g);
            let mut pairs: Vec<(usize, Q)> = v.into_iter().map(|(m, c)| (nbc_index[&m], Q::from_integer(c.into()))).collect();
            pairs.sort_by_key(|p| p.0);
            pairs
        });
        // Augmented [G | I] with the nbc block eliminated first.
        let mut ech = Echelon::new(2 * dim);
        for (k, row) in rows.into_iter().enumerate() {
            let mut pairs = row;
            pairs.push((dim + k, Q::from_integer(1.into())));
            ech.insert(&SparseVec::from_pairs(2 * dim, pairs).expect("in range"));
        }
        if ech.rank() != dim || (0..dim).any(|c| !ech.is_pivot(c)) {
            return Err(ModuliError::Mismatch(format!("gravity monomials dependent at ({n}, {degree})")));
        }
        let mut inverse = vec![SparseVec::zero(dim); dim];
        for (col, row) in ech.reduced_rows() {
            let tail = row.entries().iter().filter(|(k, _)| *k >= dim).map(|(k, c)| (k - dim, c.clone()));
            inverse[col] = SparseVec::from_pairs(dim, tail).expect("in range");
        }
        Ok(ArnoldContext { n, degree, gravity, nbc_index, inverse })
    }

    pub fn dim(&self) -> usize {
        self.gravity.len()
    }

    /// Gravity coordinates of a form of this arity and degree.
    pub fn coordinates(&self, f: &Form) -> Result<SparseVec, ModuliError> {
        if f.arity != self.n || (f.degree != self.degree && !f.is_zero()) {
            return Err(ModuliError::Mismatch(format!("form ({}, {}) in context ({}, {})", f.arity, f.degree, self.n, self.degree)));
        }
        let mut acc: BTreeMap<usize, Q> = BTreeMap::new();
        for (d, c) in &f.terms {
            for (m, v) in nbc_vector(d) {
                let cv = c * Q::from_integer(v.into());
                *acc.entry(self.nbc_index[&m]).or_default() += cv;
            }
        }
        let mut out = SparseVec::zero(self.dim());
        for (p, c) in acc {
            if !num_traits::Zero::is_zero(&c) {
                out.axpy(&c, &self.inverse[p]);
            }
        }
        Ok(out)
    }

    pub fn normal_form(&self, f: &Form) -> Result<Form, ModuliError> {
        let v = self.coordinates(f)?;
        let mut out = Form::zero(self.n, self.degree);
        for (k, c) in v.entries() {
            out.add_term(self.gravity[*k].clone(), c.clone());
        }
        Ok(out)
    }
}
