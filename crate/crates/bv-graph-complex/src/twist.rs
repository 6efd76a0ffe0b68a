//! The twisting differential, the BV graph quotient and the Hochschild
//! differential on `C(As, -)`.

use exact_linalg::{q, qf, Q};
use num_traits::One;

use crate::graph::{BVGraph, GraphSum};
use crate::operad::{compose, substitute};
use crate::GraphError;

/// Black vertex joined to one white vertex; acts by the adjoint action.
pub fn twist_generator() -> BVGraph {
    BVGraph { white: 1, black: 1, edges: vec![(0, 1)], sign: 1 }
}

/// Two black vertices joined by an edge; the Maurer-Cartan element.
pub fn mc_element() -> BVGraph {
    BVGraph { white: 0, black: 2, edges: vec![(0, 1)], sign: 1 }
}

/// Two white vertices and no edges: the product.
pub fn product() -> BVGraph {
    BVGraph { white: 2, black: 0, edges: Vec::new(), sign: 1 }
}

fn parity(d: i64) -> Q {
    if d.rem_euclid(2) == 0 {
        Q::one()
    } else {
        q(-1)
    }
}

/// `Σ_v g ∘_v h` over the black vertices `v` of `g`.
pub fn black_action(g: &BVGraph, h: &BVGraph) -> Result<GraphSum, GraphError> {
    let mut out = GraphSum::zero();
    for v in g.white..g.vertices() {
        out.axpy(&Q::one(), &substitute(g, v, h)?);
    }
    Ok(out)
}

/// `∂Γ = [μ, Γ] - (-1)^|Γ| Γ·m/2` with `μ` the twist generator and `m` the MC
/// element, in the full twisted operad. The half accounts for the two
/// labellings of `m`; with any other weight or sign `∂²` fails already on
/// graphs with two vertices of each colour.
pub fn twist_differential_graph(g: &BVGraph) -> Result<GraphSum, GraphError> {
    let mu = twist_generator();
    let mut out = compose(&mu, 1, g)?;
    let s = -parity(g.degree());
    for i in 1..=g.white {
        out.axpy(&s, &compose(g, i, &mu)?);
    }
    out.axpy(&(s * qf(1, 2)), &black_action(g, &mc_element())?);
    Ok(out)
}

pub fn twist_differential(s: &GraphSum) -> Result<GraphSum, GraphError> {
    let mut out = GraphSum::zero();
    for (g, c) in s.terms() {
        out.axpy(c, &twist_differential_graph(g)?);
    }
    Ok(out)
}

/// Zero in the BV graph quotient: a black tadpole or a black vertex of
/// valence below three.
pub fn killed_in_bvgraphs(g: &BVGraph) -> bool {
    (g.white..g.vertices()).any(|v| g.has_tadpole(v) || g.valence(v) < 3)
}

pub fn to_bvgraphs(s: &GraphSum) -> GraphSum {
    s.filter(|g| !killed_in_bvgraphs(g))
}

/// The differential of the BV graph operad: twist, then pass to the quotient.
pub fn bvgraphs_differential(s: &GraphSum) -> Result<GraphSum, GraphError> {
    Ok(to_bvgraphs(&twist_differential(&to_bvgraphs(s))?))
}

/// Hochschild differential for the product `m`:
/// `m ∘_2 f + Σ (-1)^i f ∘_i m + (-1)^{n+1} m ∘_1 f`.
pub fn hochschild_graph(f: &BVGraph) -> Result<GraphSum, GraphError> {
    let m = product();
    let n = f.white;
    let mut out = compose(&m, 2, f)?;
    for i in 1..=n {
        out.axpy(&parity(i as i64), &compose(f, i, &m)?);
    }
    out.axpy(&parity(n as i64 + 1), &compose(&m, 1, f)?);
    Ok(out)
}

pub fn hochschild_differential(s: &GraphSum) -> Result<GraphSum, GraphError> {
    let mut out = GraphSum::zero();
    for (g, c) in s.terms() {
        out.axpy(c, &hochschild_graph(g)?);
    }
    Ok(out)
}
