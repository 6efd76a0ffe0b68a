//! Noncommutative polynomials, truncated by word length.
//!
//! Lie elements are stored through their image in the free associative
//! algebra. The embedding is injective, so equality of Lie elements can be
//! decided on words.

use std::collections::BTreeMap;

use exact_linalg::Q;
use num_traits::{One, Zero};

pub type Word = Vec<u8>;

/// Minimal ring interface so the braid models can run on `i64` in the
/// solver hot loop and on `Q` everywhere else.
pub trait Coeff: Clone + PartialEq + std::fmt::Debug + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add_ref(&mut self, o: &Self);
    fn mul_ref(&self, o: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    fn to_q(&self) -> Q;
    fn from_q(x: &Q) -> Option<Self>;
}

impl Coeff for i64 {
    fn zero() -> Self {
        0
    }
    fn one() -> Self {
        1
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn add_ref(&mut self, o: &Self) {
        *self = self.checked_add(*o).expect("integer coefficient overflow");
    }
    fn mul_ref(&self, o: &Self) -> Self {
        self.checked_mul(*o).expect("integer coefficient overflow")
    }
    fn neg_ref(&self) -> Self {
        -*self
    }
    fn to_q(&self) -> Q {
        exact_linalg::q(*self)
    }
    fn from_q(x: &Q) -> Option<Self> {
        use num_traits::ToPrimitive;
        if x.is_integer() {
            x.to_integer().to_i64()
        } else {
            None
        }
    }
}

impl Coeff for Q {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add_ref(&mut self, o: &Self) {
        *self += o;
    }
    fn mul_ref(&self, o: &Self) -> Self {
        self * o
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn to_q(&self) -> Q {
        self.clone()
    }
    fn from_q(x: &Q) -> Option<Self> {
        Some(x.clone())
    }
}

pub type Poly<C> = BTreeMap<Word, C>;

pub fn add_term<C: Coeff>(p: &mut Poly<C>, w: Word, c: &C) {
    if c.is_zero() {
        return;
    }
    match p.entry(w) {
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(c.clone());
        }
        std::collections::btree_map::Entry::Occupied(mut e) => {
            e.get_mut().add_ref(c);
            if e.get().is_zero() {
                e.remove();
            }
        }
    }
}

/// `acc += c * p`
pub fn axpy<C: Coeff>(acc: &mut Poly<C>, c: &C, p: &Poly<C>) {
    if c.is_zero() {
        return;
    }
    let unit = *c == C::one();
    for (w, x) in p {
        if unit {
            add_term(acc, w.clone(), x);
        } else {
            add_term(acc, w.clone(), &x.mul_ref(c));
        }
    }
}

pub fn scale<C: Coeff>(p: &Poly<C>, c: &C) -> Poly<C> {
    let mut out = Poly::new();
    axpy(&mut out, c, p);
    out
}

pub fn mul<C: Coeff>(a: &Poly<C>, b: &Poly<C>, max_len: usize) -> Poly<C> {
    let mut out = Poly::new();
    for (u, x) in a {
        for (v, y) in b {
            if u.len() + v.len() > max_len {
                continue;
            }
            let mut w = Vec::with_capacity(u.len() + v.len());
            w.extend_from_slice(u);
            w.extend_from_slice(v);
            add_term(&mut out, w, &x.mul_ref(y));
        }
    }
    out
}

/// `ab - ba`, truncated.
pub fn commutator<C: Coeff>(a: &Poly<C>, b: &Poly<C>, max_len: usize) -> Poly<C> {
    let mut out = Poly::new();
    for (u, x) in a {
        for (v, y) in b {
            if u.len() + v.len() > max_len {
                continue;
            }
            let c = x.mul_ref(y);
            let mut w = Vec::with_capacity(u.len() + v.len());
            w.extend_from_slice(u);
            w.extend_from_slice(v);
            add_term(&mut out, w, &c);
            let mut w = Vec::with_capacity(u.len() + v.len());
            w.extend_from_slice(v);
            w.extend_from_slice(u);
            add_term(&mut out, w, &c.neg_ref());
        }
    }
    out
}

/// Applies the algebra map sending letter `a` to `images[a]`.
pub fn substitute<C: Coeff>(p: &Poly<C>, images: &[Poly<C>], max_len: usize) -> Poly<C> {
    let mut out = Poly::new();
    for (w, c) in p {
        let mut acc: Poly<C> = Poly::new();
        acc.insert(Vec::new(), c.clone());
        for &a in w {
            acc = mul(&acc, &images[a as usize], max_len);
            if acc.is_empty() {
                break;
            }
        }
        for (u, x) in acc {
            add_term(&mut out, u, &x);
        }
    }
    out
}

/// Applies the derivation with `letter -> image[letter]` (absent letters are
/// killed) at every position of every word.
pub fn derive<C: Coeff>(p: &Poly<C>, image: &dyn Fn(u8) -> Option<Poly<C>>, max_len: usize) -> Poly<C> {
    let mut out = Poly::new();
    let mut cache: BTreeMap<u8, Option<Poly<C>>> = BTreeMap::new();
    for (w, c) in p {
        for (pos, &a) in w.iter().enumerate() {
            let img = cache.entry(a).or_insert_with(|| image(a));
            let Some(img) = img else { continue };
            for (v, y) in img.iter() {
                if w.len() - 1 + v.len() > max_len {
                    continue;
                }
                let mut nw = Vec::with_capacity(w.len() - 1 + v.len());
                nw.extend_from_slice(&w[..pos]);
                nw.extend_from_slice(v);
                nw.extend_from_slice(&w[pos + 1..]);
                add_term(&mut out, nw, &c.mul_ref(y));
            }
        }
    }
    out
}

pub fn letter<C: Coeff>(a: u8) -> Poly<C> {
    let mut p = Poly::new();
    p.insert(vec![a], C::one());
    p
}

pub fn homogeneous_part<C: Coeff>(p: &Poly<C>, len: usize) -> Poly<C> {
    p.iter().filter(|(w, _)| w.len() == len).map(|(w, c)| (w.clone(), c.clone())).collect()
}

pub fn to_q<C: Coeff>(p: &Poly<C>) -> Poly<Q> {
    p.iter().map(|(w, c)| (w.clone(), c.to_q())).collect()
}
