//! Graph operad checks.

use bv_graph_complex::{
    bvgraphs_differential, enumerate_graphs, hochschild_differential, killed_in_bvgraphs, square_defects,
    twist_differential, verify_graph_identities, BVGraph, GraphError, GraphSum, MAX_VERTICES,
};
use serde_json::{json, Value};

use crate::{input, BvCmd, Ctx, InputError, Report};

type Differential = fn(&GraphSum) -> Result<GraphSum, GraphError>;

pub(crate) fn bvgraphs(c: &BvCmd, ctx: &Ctx, config: Value) -> Result<Report, InputError> {
    let BvCmd::Verify { max_white, max_black, max_edges } = c;
    if max_white + max_black > MAX_VERTICES / 2 || *max_edges > 8 {
        return Err(InputError(format!(
            "cap exceeded: at most {} vertices and 8 edges, got {max_white}+{max_black} and {max_edges}",
            MAX_VERTICES / 2
        )));
    }
    let mut r = Report::new(
        "bvgraphs verify",
        "the twisting differential squares to zero and the displayed graph identities hold up to sign",
        config,
        &["check", "graphs", "defects", "sign", "passed"],
    );
    let ids = verify_graph_identities().map_err(input)?;
    for ch in &ids.checks {
        let sign = ch.sign.map(|s| s.to_string()).unwrap_or_else(|| "-".into());
        r.row([ch.name.clone(), "-".into(), "-".into(), sign, ch.passed.to_string()]);
        if !ch.passed {
            r.fail(format!("identity {} does not hold up to sign", ch.name));
        }
    }

    ctx.progress(format_args!("enumerating graphs up to ({max_white}, {max_black}, {max_edges})"));
    let graphs = enumerate_graphs(*max_white, *max_black, *max_edges, ctx.exec);
    let reduced: Vec<BVGraph> = graphs.iter().filter(|g| !killed_in_bvgraphs(g)).cloned().collect();
    let cases: [(&str, &[BVGraph], Differential); 3] = [
        ("d^2 twisted", &graphs, twist_differential),
        ("d^2 bvgraphs", &reduced, bvgraphs_differential),
        ("d^2 hochschild", &graphs, hochschild_differential),
    ];
    let mut first = Vec::new();
    for (name, gs, d) in cases {
        ctx.progress(format_args!("{name} on {} graphs", gs.len()));
        let bad = square_defects(gs, d, ctx.exec).map_err(input)?;
        r.row([name.to_string(), gs.len().to_string(), bad.len().to_string(), "-".into(), bad.is_empty().to_string()]);
        if let Some(g) = bad.first() {
            r.fail(format!("{name}: {} graphs with nonzero square", bad.len()));
            first.push(json!({ "check": name, "graph": g.to_json() }));
        }
    }
    r.data = json!({ "identities": ids, "first_defects": first });
    Ok(r)
}
