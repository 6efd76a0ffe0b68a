//! The displayed graph identities, each checked up to one global sign.

use exact_linalg::q;
use serde::Serialize;

use crate::graph::{BVGraph, GraphSum, TermJson};
use crate::twist::{black_action, bvgraphs_differential, hochschild_differential, mc_element};
use crate::GraphError;

#[derive(Clone, Debug, Serialize)]
pub struct IdentityCheck {
    pub name: String,
    pub lhs: Vec<TermJson>,
    pub expected: Vec<TermJson>,
    /// `Some(s)` when `lhs = s · expected`.
    pub sign: Option<i8>,
    pub passed: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct IdentityReport {
    pub checks: Vec<IdentityCheck>,
}

impl IdentityReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

fn g(white: usize, black: usize, edges: &[(usize, usize)]) -> BVGraph {
    BVGraph::new(white, black, edges).expect("small graph")
}

/// `w1-w2, w1-w3` plus `w1-w3, w2-w3`, edges listed in increasing order.
pub fn two_edge_sum() -> GraphSum {
    [(g(3, 0, &[(0, 1), (0, 2)]), q(1)), (g(3, 0, &[(0, 2), (1, 2)]), q(1))].into_iter().collect()
}

/// One black vertex joined to three white vertices.
pub fn tripod() -> BVGraph {
    g(3, 1, &[(0, 3), (1, 3), (2, 3)])
}

/// Four white vertices with arcs `w1-w3` and `w2-w4`.
pub fn crossing_arcs() -> BVGraph {
    g(4, 0, &[(0, 2), (1, 3)])
}

/// White tadpole, and the black vertex with a tadpole hanging off a white one.
pub fn white_tadpole() -> BVGraph {
    g(1, 0, &[(0, 0)])
}

pub fn hanging_tadpole() -> BVGraph {
    g(1, 1, &[(0, 1), (1, 1)])
}

fn check(name: &str, lhs: GraphSum, expected: GraphSum) -> IdentityCheck {
    let sign = lhs.sign_relative_to(&expected);
    IdentityCheck { name: name.into(), lhs: lhs.to_json(), expected: expected.to_json(), sign, passed: sign.is_some() }
}

pub fn verify_graph_identities() -> Result<IdentityReport, GraphError> {
    let s = two_edge_sum();
    let two = |x: BVGraph| GraphSum::from_graph(&x).scale(&q(2));
    let mut checks = vec![
        check("tripod", bvgraphs_differential(&s)?, two(tripod())),
        check("hochschild", hochschild_differential(&s)?, two(crossing_arcs())),
    ];
    let mm = black_action(&mc_element(), &mc_element())?;
    checks.push(IdentityCheck {
        name: "maurer_cartan".into(),
        lhs: mm.to_json(),
        expected: Vec::new(),
        sign: None,
        passed: mm.is_zero(),
    });
    Ok(IdentityReport { checks })
}

