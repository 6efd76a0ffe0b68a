use std::collections::HashMap;

use crate::word::{commutator, letter, Poly, Word};

pub fn is_lyndon(w: &[u8]) -> bool {
    if w.is_empty() {
        return false;
    }
    // strictly smaller than every proper suffix
    (1..w.len()).all(|i| w < &w[i..])
}

/// Lyndon words of length exactly `w` over letters `0..k`, in lexicographic
/// order (Duval's generation).
pub fn lyndon_words(k: usize, w: usize) -> Vec<Word> {
    let mut out = Vec::new();
    if k == 0 || w == 0 {
        return out;
    }
    let mut cur: Vec<usize> = vec![0];
    loop {
        if cur.len() == w {
            out.push(cur.iter().map(|&a| a as u8).collect());
        }
        let m = cur.len();
        while cur.len() < w {
            let c = cur[cur.len() - m];
            cur.push(c);
        }
        while let Some(&last) = cur.last() {
            if last == k - 1 {
                cur.pop();
            } else {
                break;
            }
        }
        match cur.last_mut() {
            Some(last) => *last += 1,
            None => break,
        }
    }
    out
}

fn mobius(mut n: usize) -> i64 {
    let mut mu = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            mu = -mu;
        }
        p += 1;
    }
    if n > 1 {
        mu = -mu;
    }
    mu
}

/// Dimension of the weight-`w` part of the free Lie algebra on `k` letters.
pub fn witt(k: usize, w: usize) -> usize {
    if w == 0 {
        return 0;
    }
    let s: i64 = (1..=w).filter(|d| w.is_multiple_of(*d)).map(|d| mobius(d) * (k as i64).pow((w / d) as u32)).sum();
    (s / w as i64) as usize
}

/// `w = uv` with `v` the longest proper suffix that is Lyndon.
pub fn standard_factorization(w: &[u8]) -> Option<(&[u8], &[u8])> {
    (1..w.len()).find(|&i| is_lyndon(&w[i..])).map(|i| (&w[..i], &w[i..]))
}

/// Memoised expansions of standard bracketings `P_w` in the free
/// associative algebra.
#[derive(Default)]
pub struct Bracketings {
    cache: HashMap<Word, Poly<i64>>,
}

impl Bracketings {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&mut self, w: &[u8]) -> &Poly<i64> {
        if !self.cache.contains_key(w) {
            let p = if w.len() == 1 {
                letter(w[0])
            } else {
                let (u, v) = standard_factorization(w).expect("Lyndon word");
                let pu = self.get(u).clone();
                let pv = self.get(v).clone();
                commutator(&pu, &pv, w.len())
            };
            self.cache.insert(w.to_vec(), p);
        }
        &self.cache[w]
    }
}
