use exact_linalg::exec::{self, Exec};
use exact_linalg::Q;
use moduli_cohomology::{normal_form, reg_monomial, residual_weight, Form};
use num_traits::One;
use polygon_combinatorics::{classify, enumerate, Chord, ChordDiagram, Filter};
use serde::Serialize;

use crate::HochError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Module {
    Dihedral,
    Open,
    Graded,
}

impl std::str::FromStr for Module {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "dihedral" => Ok(Module::Dihedral),
            "open" => Ok(Module::Open),
            "graded" => Ok(Module::Graded),
            _ => Err(format!("unknown module {s:?}")),
        }
    }
}

impl Module {
    fn filter(self) -> Filter {
        match self {
            Module::Dihedral => Filter::PrimeGravity,
            _ => Filter::Gravity,
        }
    }

    fn admits(self, d: &ChordDiagram) -> bool {
        let c = classify(d);
        c.is_gravity && (self != Module::Dihedral || c.is_prime)
    }
}

/// Basis of the arity-n, form-degree-d component.
pub fn basis(module: Module, n: usize, degree: usize) -> Result<Vec<ChordDiagram>, HochError> {
    Ok(enumerate(n, degree, module.filter())?)
}

/// A form placed in the complex. Total degree is `degree + 2 - arity`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexElement {
    pub module: Module,
    pub form: Form,
}

impl ComplexElement {
    pub fn new(module: Module, form: Form) -> Result<Self, HochError> {
        if let Some(d) = form.terms.keys().find(|d| !module.admits(d)) {
            return Err(HochError::Support { module, arity: form.arity, term: d.to_string() });
        }
        Ok(ComplexElement { module, form })
    }

    pub fn arity(&self) -> usize {
        self.form.arity
    }

    pub fn total_degree(&self) -> i64 {
        self.form.degree as i64 + 2 - self.form.arity as i64
    }
}

/// Corners in the order d_0, ..., d_n: the two next to the root side are
/// `{2,n}` and `{1,n-1}`, the rest are `{i,i+1}`.
pub fn corner_chords(n: usize) -> Vec<Chord> {
    let mut out = vec![Chord { i: 2, j: n as u8 }];
    out.extend((1..n).map(|i| Chord { i: i as u8, j: i as u8 + 1 }));
    out.push(Chord { i: 1, j: n as u8 - 1 });
    out
}

/// The face operator `d_idx` on a monomial, keeping the non-triangle factor.
pub fn face(m: &ChordDiagram, idx: usize) -> Result<Option<(Q, ChordDiagram)>, HochError> {
    let n = m.arity;
    let c = corner_chords(n)[idx];
    let Some((s, o, i)) = reg_monomial(m, c)? else { return Ok(None) };
    let part = if idx == 0 || idx == n {
        debug_assert_eq!(o.degree(), 0);
        i
    } else {
        debug_assert_eq!(i.degree(), 0);
        o
    };
    Ok(Some((s, part)))
}

/// `-sum (-1)^i d_i` on one monomial, before normal form.
pub fn cut_monomial(m: &ChordDiagram) -> Result<Form, HochError> {
    let n = m.arity;
    let mut out = Form::zero(n - 1, m.degree());
    for idx in 0..=n {
        if let Some((s, part)) = face(m, idx)? {
            let sign = if idx % 2 == 0 { -Q::one() } else { Q::one() };
            out.add_term(part, sign * s);
        }
    }
    Ok(out)
}

/// The corner-cutting differential, arity n to n-1.
pub fn corner_cut(e: &ComplexElement) -> Result<ComplexElement, HochError> {
    let n = e.arity();
    if n < 3 {
        return Err(HochError::Arity { n });
    }
    let out = match e.module {
        Module::Dihedral | Module::Open => {
            let mut raw = Form::zero(n - 1, e.form.degree);
            for (m, x) in &e.form.terms {
                raw.add_scaled(x, &cut_monomial(m)?);
            }
            normal_form(&raw)?
        }
        Module::Graded => {
            let mut acc = Form::zero(n - 1, e.form.degree);
            for (m, x) in &e.form.terms {
                let w = residual_weight(m);
                for (d, y) in normal_form(&cut_monomial(m)?)?.terms {
                    let wd = residual_weight(&d);
                    debug_assert!(wd <= w);
                    if wd == w {
                        acc.add_term(d, x * y);
                    }
                }
            }
            acc
        }
    };
    ComplexElement::new(e.module, out)
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub module: Module,
    pub n_max: usize,
    pub checked: usize,
    pub failures: Vec<String>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Check `d o d = 0` on every basis element of arity at most `n_max`.
pub fn verify_complex(module: Module, n_max: usize, exec: Exec) -> Result<VerifyReport, HochError> {
    let mut jobs = Vec::new();
    for n in 4..=n_max {
        for d in 0..=n - 2 {
            jobs.extend(basis(module, n, d)?);
        }
    }
    let results = exec::map(exec, &jobs, |m| -> Result<Option<String>, HochError> {
        let e = ComplexElement::new(module, Form::monomial(m.clone()))?;
        let dd = corner_cut(&corner_cut(&e)?)?;
        Ok((!dd.form.is_zero()).then(|| format!("d(d({m})) = {}", dd.form)))
    });
    let mut failures = Vec::new();
    for r in results {
        match r {
            Ok(None) => {}
            Ok(Some(f)) => failures.push(f),
            Err(e) => failures.push(e.to_string()),
        }
    }
    Ok(VerifyReport { module, n_max, checked: jobs.len(), failures })
}
