//! Exhaustive enumeration of small graphs, sharded by vertex counts.

use std::collections::BTreeSet;

use exact_linalg::{exec, Exec};
use itertools::Itertools;

use crate::graph::{canonicalize, BVGraph, GraphSum};
use crate::GraphError;

fn shard(white: usize, black: usize, max_edges: usize) -> BTreeSet<BVGraph> {
    let v = (white + black) as u8;
    let slots: Vec<(u8, u8)> = (0..v).flat_map(|a| (a..v).map(move |b| (a, b))).collect();
    let mut out = BTreeSet::new();
    for e in 0..=max_edges.min(slots.len()) {
        for pick in slots.iter().copied().combinations(e) {
            let g = BVGraph { white, black, edges: pick, sign: 1 };
            if let Some((c, _)) = canonicalize(&g) {
                out.insert(c);
            }
        }
    }
    out
}

/// All nonzero canonical graphs with at most the given numbers of white
/// vertices, black vertices and edges, in a fixed order.
pub fn enumerate_graphs(max_white: usize, max_black: usize, max_edges: usize, exec: Exec) -> Vec<BVGraph> {
    let shards: Vec<(usize, usize)> = (0..=max_white).cartesian_product(0..=max_black).collect();
    exec::map(exec, &shards, |&(w, b)| shard(w, b, max_edges)).into_iter().flatten().collect()
}

/// Graphs on which `d ∘ d` does not vanish.
pub fn square_defects<F>(graphs: &[BVGraph], d: F, exec: Exec) -> Result<Vec<BVGraph>, GraphError>
where
    F: Fn(&GraphSum) -> Result<GraphSum, GraphError> + Sync + Send,
{
    let res = exec::map(exec, graphs, |g| -> Result<Option<BVGraph>, GraphError> {
        let dd = d(&d(&GraphSum::from_graph(g))?)?;
        Ok(if dd.is_zero() { None } else { Some(g.clone()) })
    });
    res.into_iter().filter_map(|r| r.transpose()).collect()
}
