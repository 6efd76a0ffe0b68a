//! Diagrams, forms and the corner-cutting complex.

use exact_linalg::q_to_string;
use hochschild_complex::{conjecture_check, h0, lemma_triviality_check, onto_check, verify_complex, H0Options, Module};
use lie_engines::{solve_grt, ALL_EQUATIONS};
use moduli_cohomology::{cohomology_dims, normal_form_with, Engine, Form, FormJson, ModuliError, Space};
use polygon_combinatorics::{chords_of, classify, enumerate as enumerate_diagrams, gravity_count, Filter};
use serde_json::{json, Value};

use crate::{input, ConjectureArgs, Ctx, DimsArgs, EngineArg, EnumArgs, FilterArg, HochCmd, InputError, ModuleArg, NfArgs, Report, SpaceArg};

pub(crate) fn module(m: ModuleArg) -> Module {
    match m {
        ModuleArg::Dihedral => Module::Dihedral,
        ModuleArg::Open => Module::Open,
        ModuleArg::Graded => Module::Graded,
    }
}

fn binom(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u128, |acc, i| acc.saturating_mul((n - i) as u128) / (i as u128 + 1))
}

/// Refuse arities whose degree-`degree` monomial space exceeds the cap.
pub(crate) fn check_monomials(ctx: &Ctx, n: usize, degree: usize) -> Result<(), InputError> {
    let chords = chords_of(n).map_err(input)?.len();
    let size = binom(chords, degree);
    if size > ctx.max_monomials as u128 {
        return Err(InputError(format!(
            "cap exceeded: {size} monomials at arity {n}, degree {degree} (--max-monomials {})",
            ctx.max_monomials
        )));
    }
    Ok(())
}

pub(crate) fn enumerate(a: &EnumArgs, ctx: &Ctx, config: Value) -> Result<Report, InputError> {
    let degrees: Vec<usize> = match a.degree {
        Some(d) => vec![d],
        None => (0..=a.n.saturating_sub(2)).collect(),
    };
    let filter = match a.filter {
        FilterArg::All => Filter::All,
        FilterArg::Gravity => Filter::Gravity,
        FilterArg::Prime => Filter::PrimeGravity,
    };
    let mut r = Report::new(
        "enum",
        "gravity chord diagrams count the cohomology of the open moduli space",
        config,
        &["degree", "diagram", "gravity", "prime", "residual_weight"],
    );
    let mut counts = Vec::new();
    for &d in &degrees {
        check_monomials(ctx, a.n, d)?;
        let ds = enumerate_diagrams(a.n, d, filter).map_err(input)?;
        if matches!(filter, Filter::Gravity) && ds.len() as u64 != gravity_count(a.n, d) {
            r.fail(format!("degree {d}: {} gravity diagrams, closed formula gives {}", ds.len(), gravity_count(a.n, d)));
        }
        for x in &ds {
            let c = classify(x);
            r.row([d.to_string(), x.to_string(), c.is_gravity.to_string(), c.is_prime.to_string(), c.residual_weight.to_string()]);
        }
        counts.push(json!({"degree": d, "count": ds.len()}));
    }
    r.data = json!({ "counts": counts });
    Ok(r)
}

pub(crate) fn dims(a: &DimsArgs, ctx: &Ctx, config: Value) -> Result<Report, InputError> {
    let (space, statement) = match a.space {
        SpaceArg::Open => (Space::Open, "gravity chord diagrams form a basis of H*(M0(n))"),
        SpaceArg::Dihedral => (Space::Dihedral, "prime gravity chord diagrams form a basis of the dihedral cohomology"),
    };
    let engine = match a.engine {
        EngineArg::Arnold => Engine::Arnold,
        EngineArg::Relations => Engine::Relations,
    };
    for d in 0..=a.n.saturating_sub(2) {
        check_monomials(ctx, a.n, d)?;
    }
    let mut r = Report::new("dims", statement, config, &["degree", "enumerated", "computed"]);
    match cohomology_dims(a.n, space, engine) {
        Ok(rows) => {
            for x in rows {
                r.row([x.degree, x.enumerated, x.computed]);
            }
        }
        Err(ModuliError::Mismatch(m)) => r.fail(m),
        Err(e) => return Err(input(e)),
    }
    Ok(r)
}

fn read_arg(s: &str) -> Result<String, InputError> {
    match s.strip_prefix('@') {
        Some(path) => std::fs::read_to_string(path).map_err(|e| InputError(format!("{path}: {e}"))),
        None => Ok(s.to_string()),
    }
}

pub(crate) fn normal_form(a: &NfArgs, ctx: &Ctx, config: Value) -> Result<Report, InputError> {
    let j: FormJson = serde_json::from_str(&read_arg(&a.form)?).map_err(input)?;
    let f = Form::from_json(&j).map_err(input)?;
    check_monomials(ctx, f.arity, f.degree)?;
    let nf = normal_form_with(&f, Engine::Arnold).map_err(input)?;
    let mut r = Report::new("nf", "every form has a unique expansion in gravity diagrams", config, &["coeff", "diagram"]);
    // the two engines reduce against independent bases and must agree
    let other = normal_form_with(&f, Engine::Relations).map_err(input)?;
    if other != nf {
        r.fail(format!("engines disagree: {nf} vs {other}"));
    }
    for (d, c) in &nf.terms {
        r.row([q_to_string(c), d.to_string()]);
    }
    r.data = json!({ "input": f.to_json(), "normal_form": nf.to_json() });
    Ok(r)
}

/// Expected degree-zero dimension: the triangle at arity 2, the pentagon
/// class at arity 4, and grt in weight n - 2.
fn expected_h0(n: usize, ctx: &Ctx) -> Result<(usize, usize), InputError> {
    let grt = if n >= 3 { solve_grt(n - 2, &ALL_EQUATIONS, ctx.exec).map_err(input)?.len() } else { 0 };
    let extra = usize::from(n == 2) + usize::from(n == 4);
    Ok((grt, extra + grt))
}

pub(crate) fn hochschild(c: &HochCmd, ctx: &Ctx, config: Value) -> Result<Report, InputError> {
    match c {
        HochCmd::Verify { module: m, max_arity } => {
            let mut r = Report::new(
                "hochschild verify",
                "the corner-cutting differential squares to zero",
                config,
                &["module", "max_arity", "checked", "failures"],
            );
            for n in 4..=*max_arity {
                for d in 0..=n - 2 {
                    check_monomials(ctx, n, d)?;
                }
            }
            let v = verify_complex(module(*m), *max_arity, ctx.exec).map_err(input)?;
            r.row([json!(v.module).as_str().unwrap_or_default().to_string(), v.n_max.to_string(), v.checked.to_string(), v.failures.len().to_string()]);
            for f in v.failures {
                r.fail(f);
            }
            Ok(r)
        }
        HochCmd::H0 { module: m, range, slow } => {
            let (lo, hi) = range.resolve((2, 7))?;
            let opts = H0Options { exec: ctx.exec, slow: *slow };
            let mut r = Report::new(
                "hochschild h0",
                "degree-zero Hochschild cohomology is spanned by the triangle, the pentagon class and grt",
                config,
                &["arity", "top_dim", "source_dim", "image_rank", "h0", "grt_dim", "expected", "agree"],
            );
            let mut data = Vec::new();
            for n in lo..=hi {
                check_monomials(ctx, n + 1, n.saturating_sub(2))?;
                ctx.progress(format_args!("h0 arity {n}"));
                let rep = h0(module(*m), n, opts).map_err(input)?;
                let (grt, expected) = expected_h0(n, ctx)?;
                let mut agree = rep.h0 == expected;
                if !agree {
                    r.fail(format!("arity {n}: h0 = {} but expected {expected}", rep.h0));
                }
                if !matches!(m, ModuleArg::Dihedral) {
                    let dihedral = h0(Module::Dihedral, n, opts).map_err(input)?.h0;
                    if dihedral != rep.h0 {
                        agree = false;
                        r.fail(format!("arity {n}: h0 = {} differs from the dihedral value {dihedral}", rep.h0));
                    }
                }
                r.row([n, rep.top_prime_dim, rep.source_dim, rep.image_rank, rep.h0, grt, expected].map(|x| x.to_string()).into_iter().chain([agree.to_string()]));
                let classes: Vec<String> = rep.basis.iter().map(|d| d.to_string()).collect();
                data.push(json!({ "arity": n, "h0": rep.h0, "classes": classes }));
            }
            r.data = json!({ "h0": data });
            Ok(r)
        }
        HochCmd::Onto { range, slow } => {
            let (lo, hi) = range.resolve((4, 7))?;
            let opts = H0Options { exec: ctx.exec, slow: *slow };
            let mut r = Report::new(
                "hochschild onto",
                "the alternating sum of inner faces maps onto the top prime classes",
                config,
                &["arity", "target_dim", "rank", "onto"],
            );
            for n in lo..=hi {
                check_monomials(ctx, n + 1, n.saturating_sub(2))?;
                ctx.progress(format_args!("onto arity {n}"));
                let o = onto_check(n, opts).map_err(input)?;
                if !o.onto {
                    r.fail(format!("arity {n}: rank {} < {}", o.rank, o.target_dim));
                }
                r.row([o.arity.to_string(), o.target_dim.to_string(), o.rank.to_string(), o.onto.to_string()]);
            }
            Ok(r)
        }
        HochCmd::Triviality { range, slow } => {
            let (lo, hi) = range.resolve((4, 7))?;
            let opts = H0Options { exec: ctx.exec, slow: *slow };
            let mut r = Report::new(
                "hochschild triviality",
                "pullback along the first side is a section of the first face and is killed by the others",
                config,
                &["arity", "classes", "section", "vanishing"],
            );
            for n in lo..=hi {
                check_monomials(ctx, n + 1, n.saturating_sub(2))?;
                ctx.progress(format_args!("triviality arity {n}"));
                let l = lemma_triviality_check(n, opts).map_err(input)?;
                r.row([l.arity.to_string(), l.classes.to_string(), l.section.to_string(), l.vanishing.to_string()]);
                for f in l.failures {
                    r.fail(format!("arity {n}: {f}"));
                }
            }
            Ok(r)
        }
    }
}

pub(crate) fn conjecture(a: &ConjectureArgs, ctx: &Ctx, config: Value) -> Result<Report, InputError> {
    for w in 1..=a.max_weight {
        check_monomials(ctx, w + 3, w)?;
    }
    let rows = conjecture_check(a.max_weight, H0Options { exec: ctx.exec, slow: a.slow }).map_err(input)?;
    let mut r = Report::new(
        "conjecture",
        "degree-zero dimensions count Lyndon words in the letters 2 and 3",
        config,
        &["weight", "arity", "h0", "lyndon", "agree"],
    );
    for x in rows {
        if !x.agree {
            r.fail(format!("weight {}: h0 = {} but {} Lyndon words", x.weight, x.h0, x.lyndon));
        }
        r.row([x.weight.to_string(), x.arity.to_string(), x.h0.to_string(), x.lyndon.to_string(), x.agree.to_string()]);
    }
    Ok(r)
}
