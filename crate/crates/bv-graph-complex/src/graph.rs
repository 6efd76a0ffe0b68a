//! Graphs with labelled white and unlabelled black vertices.
//!
//! Vertices `0..white` are white, `white..white+black` are black. Edges have
//! degree -1 and are ordered up to even permutations; black vertices have
//! degree 2, so relabelling them carries no sign. A repeated edge is
//! therefore zero, and so is any graph with an odd automorphism.

use std::collections::BTreeMap;

use exact_linalg::{q, q_to_string, parse_q, Q};
use itertools::Itertools;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::GraphError;

/// Largest vertex count accepted anywhere in the crate.
pub const MAX_VERTICES: usize = 12;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BVGraph {
    pub white: usize,
    pub black: usize,
    pub edges: Vec<(u8, u8)>,
    pub sign: i8,
}

impl BVGraph {
    pub fn new(white: usize, black: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let v = white + black;
        if v > MAX_VERTICES {
            return Err(GraphError::TooLarge(v));
        }
        if let Some(&(a, b)) = edges.iter().find(|&&(a, b)| a >= v || b >= v) {
            return Err(GraphError::Vertex(format!("edge ({a},{b}) with {v} vertices")));
        }
        Ok(BVGraph { white, black, edges: edges.iter().map(|&(a, b)| (a as u8, b as u8)).collect(), sign: 1 })
    }

    pub fn vertices(&self) -> usize {
        self.white + self.black
    }

    pub fn is_black(&self, v: usize) -> bool {
        v >= self.white
    }

    /// `2·black - edges`, tadpoles counted as edges.
    pub fn degree(&self) -> i64 {
        2 * self.black as i64 - self.edges.len() as i64
    }

    /// Number of half-edges at `v`; a tadpole counts twice.
    pub fn valence(&self, v: usize) -> usize {
        self.edges.iter().map(|&(a, b)| (a as usize == v) as usize + (b as usize == v) as usize).sum()
    }

    pub fn has_tadpole(&self, v: usize) -> bool {
        self.edges.iter().any(|&(a, b)| a == b && a as usize == v)
    }

    pub fn arity(&self) -> usize {
        self.white
    }
}

/// Sorts `edges` in place, returning the sign of the sorting permutation, or
/// `None` if an edge repeats.
fn sort_with_sign(edges: &mut [(u8, u8)]) -> Option<i8> {
    let mut sign = 1i8;
    // insertion sort, counting transpositions
    for i in 1..edges.len() {
        let mut j = i;
        while j > 0 && edges[j - 1] > edges[j] {
            edges.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    if edges.windows(2).any(|w| w[0] == w[1]) {
        None
    } else {
        Some(sign)
    }
}

fn norm((a, b): (u8, u8)) -> (u8, u8) {
    (a.min(b), a.max(b))
}

/// Canonical representative and the sign relating it to `g`, or `None` if `g`
/// is zero.
pub fn canonicalize(g: &BVGraph) -> Option<(BVGraph, i8)> {
    let w = g.white;
    let k = g.black;
    let edges: Vec<(u8, u8)> = g.edges.iter().map(|&e| norm(e)).collect();
    if k <= 1 {
        let mut e = edges;
        let s = sort_with_sign(&mut e)?;
        return Some((BVGraph { white: w, black: k, edges: e, sign: 1 }, s * g.sign));
    }
    // black vertices are only permuted within classes of equal invariants
    let invariant = |v: usize| {
        let mut whites: Vec<u8> = Vec::new();
        let mut blacks = 0usize;
        let mut loops = 0usize;
        for &(a, b) in &edges {
            let (a, b) = (a as usize, b as usize);
            if a == v && b == v {
                loops += 1;
            } else if a == v || b == v {
                let o = if a == v { b } else { a };
                if o < w {
                    whites.push(o as u8);
                } else {
                    blacks += 1;
                }
            }
        }
        whites.sort_unstable();
        (whites.len() + blacks + 2 * loops, loops, whites, blacks)
    };
    let mut order: Vec<(_, usize)> = (w..w + k).map(|v| (invariant(v), v)).collect();
    order.sort();
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for (i, (inv, v)) in order.iter().enumerate() {
        if i > 0 && order[i - 1].0 == *inv {
            classes.last_mut().unwrap().push(*v);
        } else {
            classes.push(vec![*v]);
        }
    }
    let mut relabel = vec![0u8; w + k];
    for (v, r) in relabel.iter_mut().enumerate().take(w) {
        *r = v as u8;
    }
    if classes.len() == k {
        for (i, c) in classes.iter().enumerate() {
            relabel[c[0]] = (w + i) as u8;
        }
        let mut e: Vec<(u8, u8)> = edges.iter().map(|&(a, b)| norm((relabel[a as usize], relabel[b as usize]))).collect();
        let s = sort_with_sign(&mut e)?;
        return Some((BVGraph { white: w, black: k, edges: e, sign: 1 }, s * g.sign));
    }
    let mut best: Option<(Vec<(u8, u8)>, i8)> = None;
    let mut odd = false;
    let perms = classes.iter().map(|c| c.iter().copied().permutations(c.len()).collect::<Vec<_>>()).multi_cartesian_product();
    for choice in perms {
        let mut next = w;
        for class in &choice {
            for &v in class {
                relabel[v] = next as u8;
                next += 1;
            }
        }
        let mut e: Vec<(u8, u8)> = edges.iter().map(|&(a, b)| norm((relabel[a as usize], relabel[b as usize]))).collect();
        let s = sort_with_sign(&mut e)?;
        match &best {
            Some((be, bs)) if *be == e => {
                if *bs != s {
                    odd = true;
                }
            }
            Some((be, _)) if *be < e => {}
            _ => {
                best = Some((e, s));
                odd = false;
            }
        }
    }
    if odd {
        return None;
    }
    let (e, s) = best.expect("at least one labelling");
    Some((BVGraph { white: w, black: k, edges: e, sign: 1 }, s * g.sign))
}

/// Finite linear combination of canonical graphs.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GraphSum {
    terms: BTreeMap<BVGraph, Q>,
}

impl GraphSum {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_graph(g: &BVGraph) -> Self {
        let mut s = Self::zero();
        s.add_term(g, &Q::one());
        s
    }

    pub fn add_term(&mut self, g: &BVGraph, c: &Q) {
        if c.is_zero() {
            return;
        }
        let Some((canon, sign)) = canonicalize(g) else { return };
        let c = if sign < 0 { -c } else { c.clone() };
        let entry = self.terms.entry(canon.clone()).or_insert_with(Q::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&canon);
        }
    }

    pub fn terms(&self) -> &BTreeMap<BVGraph, Q> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, g: &BVGraph) -> Q {
        match canonicalize(g) {
            Some((c, s)) => self.terms.get(&c).map(|x| if s < 0 { -x } else { x.clone() }).unwrap_or_else(Q::zero),
            None => Q::zero(),
        }
    }

    pub fn axpy(&mut self, c: &Q, other: &GraphSum) {
        for (g, x) in &other.terms {
            self.add_term(g, &(c * x));
        }
    }

    pub fn add(&self, other: &GraphSum) -> GraphSum {
        let mut s = self.clone();
        s.axpy(&Q::one(), other);
        s
    }

    pub fn sub(&self, other: &GraphSum) -> GraphSum {
        let mut s = self.clone();
        s.axpy(&q(-1), other);
        s
    }

    pub fn scale(&self, c: &Q) -> GraphSum {
        let mut s = GraphSum::zero();
        s.axpy(c, self);
        s
    }

    /// `Some(±1)` if `self = ±other`, with `None` otherwise (or if both vanish).
    pub fn sign_relative_to(&self, other: &GraphSum) -> Option<i8> {
        if self.is_zero() || other.is_zero() {
            return None;
        }
        if self == other {
            Some(1)
        } else if self.add(other).is_zero() {
            Some(-1)
        } else {
            None
        }
    }

    /// Applies `f` to every term and sums, scaling by the coefficients.
    pub fn map_linear(&self, f: impl Fn(&BVGraph) -> GraphSum) -> GraphSum {
        let mut out = GraphSum::zero();
        for (g, c) in &self.terms {
            out.axpy(c, &f(g));
        }
        out
    }

    pub fn filter(&self, keep: impl Fn(&BVGraph) -> bool) -> GraphSum {
        GraphSum { terms: self.terms.iter().filter(|(g, _)| keep(g)).map(|(g, c)| (g.clone(), c.clone())).collect() }
    }
}

impl FromIterator<(BVGraph, Q)> for GraphSum {
    fn from_iter<I: IntoIterator<Item = (BVGraph, Q)>>(iter: I) -> Self {
        let mut s = GraphSum::zero();
        for (g, c) in iter {
            s.add_term(&g, &c);
        }
        s
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub white: usize,
    pub black: usize,
    pub edges: Vec<[String; 2]>,
    pub sign: i8,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub coefficient: String,
    pub graph: GraphJson,
}

fn vertex_name(g: &BVGraph, v: u8) -> String {
    let v = v as usize;
    if v < g.white {
        format!("w{}", v + 1)
    } else {
        format!("b{}", v - g.white + 1)
    }
}

fn parse_vertex(white: usize, black: usize, s: &str) -> Result<usize, GraphError> {
    let bad = || GraphError::Vertex(s.to_string());
    let (kind, num) = s.split_at(1.min(s.len()));
    let k: usize = num.parse().map_err(|_| bad())?;
    match kind {
        "w" if (1..=white).contains(&k) => Ok(k - 1),
        "b" if (1..=black).contains(&k) => Ok(white + k - 1),
        _ => Err(bad()),
    }
}

impl BVGraph {
    pub fn to_json(&self) -> GraphJson {
        GraphJson {
            white: self.white,
            black: self.black,
            edges: self.edges.iter().map(|&(a, b)| [vertex_name(self, a), vertex_name(self, b)]).collect(),
            sign: self.sign,
        }
    }

    pub fn from_json(j: &GraphJson) -> Result<Self, GraphError> {
        if j.sign != 1 && j.sign != -1 {
            return Err(GraphError::Sign(j.sign));
        }
        let edges = j
            .edges
            .iter()
            .map(|[a, b]| Ok((parse_vertex(j.white, j.black, a)?, parse_vertex(j.white, j.black, b)?)))
            .collect::<Result<Vec<_>, GraphError>>()?;
        let mut g = BVGraph::new(j.white, j.black, &edges)?;
        g.sign = j.sign;
        Ok(g)
    }
}

impl GraphSum {
    pub fn to_json(&self) -> Vec<TermJson> {
        self.terms.iter().map(|(g, c)| TermJson { coefficient: q_to_string(c), graph: g.to_json() }).collect()
    }

    pub fn from_json(terms: &[TermJson]) -> Result<Self, GraphError> {
        let mut s = GraphSum::zero();
        for t in terms {
            let c = parse_q(&t.coefficient).map_err(|_| GraphError::Parse(t.coefficient.clone()))?;
            s.add_term(&BVGraph::from_json(&t.graph)?, &c);
        }
        Ok(s)
    }
}
