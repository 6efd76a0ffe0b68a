//! Period integrals and their Stokes relations.

use period_integrals::{
    integrate_period, prime_top_diagrams, stokes_defect, zeta_series, Budget, Method, PeriodEstimate,
};
use polygon_combinatorics::{enumerate, ChordDiagram, Filter};
use serde::Deserialize;
use serde_json::{json, Value};

use crate::{input, Ctx, InputError, MethodArg, PeriodCmd, Report, SamplingArgs};

#[derive(Deserialize)]
struct DiagramArg {
    arity: usize,
    chords: Vec<[usize; 2]>,
}

/// Diagrams to integrate, each with the sign relating it to the input order.
fn diagrams(a: &SamplingArgs, degree_from_top: usize) -> Result<(usize, Vec<(ChordDiagram, i32)>), InputError> {
    if let Some(text) = &a.diagram {
        let d: DiagramArg = serde_json::from_str(text).map_err(input)?;
        if a.n.is_some_and(|n| n != d.arity) {
            return Err(InputError(format!("--n {} does not match the diagram arity {}", a.n.unwrap_or(0), d.arity)));
        }
        let pairs: Vec<(usize, usize)> = d.chords.iter().map(|c| (c[0], c[1])).collect();
        let (p, sign) = ChordDiagram::from_pairs(d.arity, &pairs).map_err(input)?;
        return Ok((d.arity, vec![(p, sign)]));
    }
    let n = a.n.ok_or_else(|| InputError("either --n or --diagram is required".into()))?;
    if !(3..=5).contains(&n) {
        return Err(InputError(format!("periods are implemented for arity 3..=5, got {n}")));
    }
    let ds = if degree_from_top == 0 {
        prime_top_diagrams(n).map_err(input)?
    } else if n < 4 {
        Vec::new()
    } else {
        enumerate(n, n - 2 - degree_from_top, Filter::PrimeGravity).map_err(input)?
    };
    Ok((n, ds.into_iter().map(|d| (d, 1)).collect()))
}

fn budget(a: &SamplingArgs, ctx: &Ctx) -> Result<(Method, Budget), InputError> {
    if a.target_error.is_some_and(|t| t.is_nan() || t <= 0.0) {
        return Err(InputError("--target-error must be positive".into()));
    }
    let method = match a.method {
        MethodArg::Mc => Method::Mc,
        MethodArg::Stratified => Method::Stratified,
    };
    Ok((method, Budget { samples: a.samples, seed: a.seed, target_error: a.target_error, exec: ctx.exec }))
}

fn signed(mut e: PeriodEstimate, sign: i32) -> PeriodEstimate {
    e.value *= sign as f64;
    e
}

fn fmt(x: f64) -> String {
    format!("{x:.10}")
}

pub(crate) fn periods(c: &PeriodCmd, ctx: &Ctx, config: Value) -> Result<Report, InputError> {
    match c {
        PeriodCmd::Integrate(a) => {
            let (n, ds) = diagrams(a, 0)?;
            let (method, budget) = budget(a, ctx)?;
            // |period| = zeta(n - 2), tolerance max(3 sigma, floor)
            let (target, floor) = match n {
                4 => (zeta_series(2, 100_000), 1e-3),
                5 => (zeta_series(3, 100_000), 3e-3),
                _ => (0.0, 1e-3),
            };
            let mut r = Report::new(
                "periods integrate",
                "top prime diagrams integrate to zeta(n-2) up to sign over the associahedron cell",
                config,
                &["diagram", "value", "std_error", "target", "agree", "partial"],
            );
            let mut data = Vec::new();
            for (p, sign) in ds {
                ctx.progress(format_args!("integrating {p}"));
                let e = signed(integrate_period(&p, method, &budget).map_err(input)?, sign);
                let t = if n >= 4 { target.copysign(e.value) } else { 0.0 };
                let ok = e.agrees_with(t, 3.0, floor);
                if !ok {
                    r.fail(format!("{p}: {} is not within max(3 sigma, {floor}) of {}", fmt(e.value), fmt(t)));
                }
                r.row([p.to_string(), fmt(e.value), fmt(e.standard_error), fmt(t), ok.to_string(), e.partial.to_string()]);
                data.push(json!({ "diagram": p, "sign": sign, "estimate": e }));
            }
            r.data = json!({ "periods": data });
            Ok(r)
        }
        PeriodCmd::Stokes(a) => {
            let (_, ds) = diagrams(a, 1)?;
            let (method, budget) = budget(a, ctx)?;
            let mut r = Report::new(
                "periods stokes",
                "the boundary integral of a degree n-3 prime form vanishes",
                config,
                &["diagram", "total", "std_error", "nonzero_faces", "agree"],
            );
            let mut data = Vec::new();
            for (p, sign) in ds {
                ctx.progress(format_args!("boundary of {p}"));
                let rep = stokes_defect(&p, method, &budget).map_err(input)?;
                let total = signed(rep.total.clone(), sign);
                let ok = total.agrees_with(0.0, 3.0, 0.0);
                if !ok {
                    r.fail(format!("{p}: boundary sum {} exceeds 3 sigma = {}", fmt(total.value), fmt(3.0 * total.standard_error)));
                }
                let nonzero = rep.faces.iter().filter(|f| f.estimate.value.abs() > 3.0 * f.estimate.standard_error + 1e-12).count();
                r.row([p.to_string(), fmt(total.value), fmt(total.standard_error), nonzero.to_string(), ok.to_string()]);
                data.push(json!({ "sign": sign, "report": rep }));
            }
            r.data = json!({ "stokes": data });
            Ok(r)
        }
    }
}
