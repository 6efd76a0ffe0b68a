//! Partial composition: delete a vertex and reconnect its half-edges to the
//! vertices of the inserted graph in all possible ways.
//!
//! Edges of the outer graph come first in the result, followed by the edges
//! of the inner graph. A tadpole at the deleted vertex goes to an unordered
//! pair of new vertices, so it yields one tadpole per vertex and one edge per
//! pair.

use exact_linalg::Q;
use num_traits::One;

use crate::graph::{BVGraph, GraphSum, MAX_VERTICES};
use crate::GraphError;

/// The arity-one identity: a single white vertex.
pub fn unit() -> BVGraph {
    BVGraph { white: 1, black: 0, edges: Vec::new(), sign: 1 }
}

/// Where each vertex lands after substitution.
struct Layout {
    outer: Vec<Option<u8>>,
    inner: Vec<u8>,
    white: usize,
    black: usize,
}

/// Replaces vertex `v` of `g` by `h`. When `v` is white the white vertices of
/// `h` stay white and take its place in the labelling; when `v` is black every
/// vertex of `h` becomes black.
fn layout(g: &BVGraph, v: usize, h: &BVGraph) -> Layout {
    let hv = h.vertices();
    if !g.is_black(v) {
        let white = g.white + h.white - 1;
        let black = g.black + h.black;
        let outer = (0..g.vertices())
            .map(|a| match a {
                _ if a == v => None,
                _ if a < v => Some(a as u8),
                _ if a < g.white => Some((a + h.white - 1) as u8),
                _ => Some((white + a - g.white) as u8),
            })
            .collect();
        let inner = (0..hv)
            .map(|b| if b < h.white { (v + b) as u8 } else { (white + g.black + b - h.white) as u8 })
            .collect();
        Layout { outer, inner, white, black }
    } else {
        let white = g.white;
        let black = g.black - 1 + hv;
        let outer = (0..g.vertices())
            .map(|a| match a {
                _ if a == v => None,
                _ if a < v => Some(a as u8),
                _ => Some((a - 1) as u8),
            })
            .collect();
        let inner = (0..hv).map(|b| (g.vertices() - 1 + b) as u8).collect();
        Layout { outer, inner, white, black }
    }
}

/// Inserts `h` at vertex `v` (zero-based, white or black) of `g`.
pub fn substitute(g: &BVGraph, v: usize, h: &BVGraph) -> Result<GraphSum, GraphError> {
    if v >= g.vertices() {
        return Err(GraphError::Vertex(format!("vertex {v} of a graph with {} vertices", g.vertices())));
    }
    if g.is_black(v) && h.white > 0 && h.black > 0 {
        return Err(GraphError::Vertex("mixed graph inserted at a black vertex".into()));
    }
    let total = g.vertices() - 1 + h.vertices();
    if total > MAX_VERTICES {
        return Err(GraphError::TooLarge(total));
    }
    let lay = layout(g, v, h);
    let hv = h.vertices() as u8;
    let inner_edges: Vec<(u8, u8)> = h.edges.iter().map(|&(a, b)| (lay.inner[a as usize], lay.inner[b as usize])).collect();
    // each outer edge gives a list of alternatives
    let mut options: Vec<Vec<(u8, u8)>> = Vec::with_capacity(g.edges.len());
    for &(a, b) in &g.edges {
        let (a, b) = (a as usize, b as usize);
        let opts = match (a == v, b == v) {
            (false, false) => vec![(lay.outer[a].unwrap(), lay.outer[b].unwrap())],
            (true, true) => (0..hv).flat_map(|x| (x..hv).map(move |y| (x, y))).map(|(x, y)| (lay.inner[x as usize], lay.inner[y as usize])).collect(),
            (true, false) => (0..hv).map(|x| (lay.inner[x as usize], lay.outer[b].unwrap())).collect(),
            (false, true) => (0..hv).map(|x| (lay.outer[a].unwrap(), lay.inner[x as usize])).collect(),
        };
        options.push(opts);
    }
    let mut out = GraphSum::zero();
    if options.iter().any(|o| o.is_empty()) {
        return Ok(out);
    }
    let sign = Q::from_integer((g.sign * h.sign).into());
    let mut idx = vec![0usize; options.len()];
    loop {
        let mut edges: Vec<(u8, u8)> = idx.iter().zip(&options).map(|(&i, o)| o[i]).collect();
        edges.extend_from_slice(&inner_edges);
        let r = BVGraph { white: lay.white, black: lay.black, edges, sign: 1 };
        out.add_term(&r, &sign);
        // odometer
        let mut k = 0;
        loop {
            if k == idx.len() {
                return Ok(out);
            }
            idx[k] += 1;
            if idx[k] < options[k].len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

/// `g ∘_i h` for a white vertex `i` (one-based).
pub fn compose(g: &BVGraph, i: usize, h: &BVGraph) -> Result<GraphSum, GraphError> {
    if i == 0 || i > g.white {
        return Err(GraphError::Vertex(format!("∘_{i} on arity {}", g.white)));
    }
    substitute(g, i - 1, h)
}

/// Bilinear extension of [`compose`].
pub fn compose_sums(a: &GraphSum, i: usize, b: &GraphSum) -> Result<GraphSum, GraphError> {
    let mut out = GraphSum::zero();
    for (g, x) in a.terms() {
        for (h, y) in b.terms() {
            out.axpy(&(x * y), &compose(g, i, h)?);
        }
    }
    Ok(out)
}

pub fn unit_sum() -> GraphSum {
    let mut s = GraphSum::zero();
    s.add_term(&unit(), &Q::one());
    s
}
