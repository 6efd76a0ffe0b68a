//! grt and the ribbon braid maps.

use exact_linalg::q_to_string;
use lie_engines::{
    chord_index, chords, d_alphabet, discrepancy, lie_normal_form, pentagon_defect, solve_grt, symmetry_defects, xy,
    Equation, Expr, LieElement, RbModel, TModel, DEFAULT_RB_MAX_N,
};
use serde_json::{json, Value};

use crate::{input, BraidCmd, Ctx, EquationArg, GrtCmd, InputError, Report};

fn equations(args: &[EquationArg]) -> Vec<Equation> {
    let mut eqs: Vec<Equation> = args
        .iter()
        .map(|e| match e {
            EquationArg::Pentagon => Equation::Pentagon,
            EquationArg::Sym2 => Equation::Sym2,
            EquationArg::Sym3 => Equation::Sym3,
        })
        .collect();
    if eqs.is_empty() {
        eqs = lie_engines::ALL_EQUATIONS.to_vec();
    }
    eqs.sort();
    eqs.dedup();
    eqs
}

fn eq_name(e: Equation) -> &'static str {
    match e {
        Equation::Pentagon => "pentagon",
        Equation::Sym2 => "sym2",
        Equation::Sym3 => "sym3",
    }
}

/// Names of the chosen equations that `psi` violates in weights up to `w`.
fn violated(psi: &LieElement, w: usize, eqs: &[Equation]) -> Result<Vec<(Equation, Value)>, InputError> {
    let mut out = Vec::new();
    let (s2, s3) = symmetry_defects(psi, w).map_err(input)?;
    for &e in eqs {
        let bad = match e {
            Equation::Pentagon => {
                let d = pentagon_defect(psi, w).map_err(input)?;
                (!d.is_zero()).then(|| json!("nonzero"))
            }
            Equation::Sym2 => (!s2.is_zero()).then(|| json!(s2.to_json())),
            Equation::Sym3 => (!s3.is_zero()).then(|| json!(s3.to_json())),
        };
        if let Some(v) = bad {
            out.push((e, v));
        }
    }
    Ok(out)
}

pub(crate) fn grt(c: &GrtCmd, ctx: &Ctx, config: Value) -> Result<Report, InputError> {
    match c {
        GrtCmd::Solve { range, equations: e } => {
            let (lo, hi) = range.resolve((2, 7))?;
            if hi > 12 {
                return Err(InputError(format!("cap exceeded: weight {hi} > 12")));
            }
            let eqs = equations(e);
            let names: Vec<&str> = eqs.iter().map(|e| eq_name(*e)).collect();
            let mut r = Report::new(
                "grt solve",
                "grt is cut out of Lie(x,y) by the pentagon and the two symmetry equations",
                config,
                &["weight", "equations", "dim", "reverified"],
            );
            let mut sols = Vec::new();
            for w in lo..=hi {
                ctx.progress(format_args!("grt weight {w}"));
                let basis = solve_grt(w, &eqs, ctx.exec).map_err(input)?;
                let mut ok = true;
                for (k, psi) in basis.iter().enumerate() {
                    for (e, _) in violated(psi, w, &eqs)? {
                        ok = false;
                        r.fail(format!("weight {w}: solution {k} violates {}", eq_name(e)));
                    }
                }
                r.row([w.to_string(), names.join("+"), basis.len().to_string(), ok.to_string()]);
                sols.push(json!({ "weight": w, "basis": basis.iter().map(|b| b.to_json()).collect::<Vec<_>>() }));
            }
            r.data = json!({ "solutions": sols });
            Ok(r)
        }
        GrtCmd::Check { psi, weight, equations: e } => {
            let w = *weight;
            if w == 0 || w > 12 {
                return Err(InputError(format!("weight must be in 1..=12, got {w}")));
            }
            let expr = Expr::parse(psi).map_err(input)?;
            let psi = lie_normal_form(&expr, &xy(), w).map_err(input)?;
            let eqs = equations(e);
            let bad = violated(&psi, w, &eqs)?;
            let mut r = Report::new(
                "grt check",
                "grt is cut out of Lie(x,y) by the pentagon and the two symmetry equations",
                config,
                &["equation", "satisfied"],
            );
            let mut defects = serde_json::Map::new();
            for e in &eqs {
                let hit = bad.iter().find(|(b, _)| b == e);
                r.row([eq_name(*e).to_string(), hit.is_none().to_string()]);
                if let Some((_, v)) = hit {
                    r.fail(format!("{} defect is nonzero", eq_name(*e)));
                    defects.insert(eq_name(*e).into(), v.clone());
                }
            }
            r.data = json!({ "psi": psi.to_json(), "defects": defects });
            Ok(r)
        }
    }
}

fn d_gen(n: usize, i: usize, j: usize, w: usize) -> LieElement {
    LieElement::generator(&d_alphabet(n), w, chord_index(n, i, j).expect("chord of the polygon"))
}

/// Chord generators and their iterated brackets up to weight `w`.
fn brackets(n: usize, w: usize) -> Result<Vec<LieElement>, InputError> {
    let gens: Vec<LieElement> = chords(n).into_iter().map(|(i, j)| d_gen(n, i, j, w)).collect();
    let mut layer = gens.clone();
    let mut out = gens.clone();
    for _ in 2..=w {
        let mut next = Vec::new();
        for g in &gens {
            for e in &layer {
                next.push(g.bracket(e).map_err(input)?);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    Ok(out)
}

pub(crate) fn braids(c: &BraidCmd, ctx: &Ctx, config: Value) -> Result<Report, InputError> {
    match c {
        BraidCmd::Roundtrip { range, weight } => {
            let (lo, hi) = range.resolve((3, 4))?;
            if lo < 2 {
                return Err(InputError("arity must be at least 2".into()));
            }
            let mut r = Report::new(
                "braids roundtrip",
                "projection after the ribbon braid lift is the identity on dihedral braids",
                config,
                &["n", "weight", "elements", "mismatches"],
            );
            for n in lo..=hi {
                ctx.progress(format_args!("roundtrip n={n}"));
                let rb = RbModel::with_caps(n, *weight, DEFAULT_RB_MAX_N, ctx.rb_max_weight).map_err(input)?;
                let m = TModel::p(n, *weight);
                let elems = brackets(n, *weight)?;
                let mut bad = 0;
                for (k, e) in elems.iter().enumerate() {
                    let back = rb.pi(&rb.gamma(e).map_err(input)?).map_err(input)?;
                    if back != m.from_d(e).map_err(input)? {
                        bad += 1;
                        r.fail(format!("n={n}: element {k} does not round-trip"));
                    }
                }
                r.row([n, *weight, elems.len(), bad]);
            }
            Ok(r)
        }
        BraidCmd::Discrepancy { range } => {
            let (lo, hi) = range.resolve((2, 4))?;
            if lo < 2 || hi > DEFAULT_RB_MAX_N {
                return Err(InputError(format!("arity range must lie in 2..={DEFAULT_RB_MAX_N}")));
            }
            let mut r = Report::new(
                "braids discrepancy",
                "projection and cabling commute up to multiples of the adjacent chord",
                config,
                &["n", "i", "generator", "coefficient", "family", "expected"],
            );
            let mut extra = Vec::new();
            for n in lo..=hi {
                for i in 1..=n {
                    let adj = d_gen(n + 1, i, i + 1, 1);
                    let word = adj.terms().keys().next().expect("generator").clone();
                    for (name, v) in discrepancy(n, i).map_err(input)? {
                        let c = v.coefficient(&word);
                        if v != adj.scale(&c) {
                            r.fail(format!("n={n} i={i} {name}: not a multiple of the adjacent chord"));
                        }
                        let b = |u: usize, w: usize| u >= 1 && name == format!("b{u}{w}");
                        let (family, expected) = if name == format!("s{i}") {
                            ("twist", Some(1))
                        } else if b(i.wrapping_sub(1), i) || b(i, i + 1) {
                            ("adjacent", Some(-1))
                        } else if b(i.wrapping_sub(1), i + 1) {
                            ("skip", None)
                        } else {
                            ("other", Some(0))
                        };
                        let cs = q_to_string(&c);
                        match expected {
                            Some(e) if cs != e.to_string() => {
                                r.fail(format!("n={n} i={i} {name}: coefficient {cs}, displayed {e}"))
                            }
                            None if cs != "0" => extra.push(json!({ "n": n, "i": i, "generator": name, "coefficient": cs })),
                            _ => {}
                        }
                        let shown = expected.map(|e| e.to_string()).unwrap_or_else(|| "-".into());
                        r.row([n.to_string(), i.to_string(), name, cs, family.to_string(), shown]);
                    }
                }
            }
            r.data = json!({ "unlisted_nonzero": extra });
            Ok(r)
        }
    }
}
