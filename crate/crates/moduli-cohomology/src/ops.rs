use std::collections::BTreeMap;

use exact_linalg::{Echelon, SparseVec, Q};
use num_traits::One;
use polygon_combinatorics::{classify, crosses, enumerate, gravity_count, Chord, ChordDiagram, Filter};
use serde::Serialize;

use crate::{arnold_context, nbc_vector, relation_context, Form, ModuliError, TensorForm};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Engine {
    /// Reduction against the span of quadratic relations times monomials.
    Relations,
    /// Inverse of the gravity-to-nbc change of basis.
    #[default]
    Arnold,
}

pub fn normal_form(f: &Form) -> Result<Form, ModuliError> {
    normal_form_with(f, Engine::Arnold)
}

pub fn normal_form_with(f: &Form, engine: Engine) -> Result<Form, ModuliError> {
    if f.is_zero() || f.degree == 0 {
        return Ok(f.clone());
    }
    match engine {
        Engine::Arnold => arnold_context(f.arity, f.degree)?.normal_form(f),
        Engine::Relations => relation_context(f.arity, f.degree)?.normal_form(f),
    }
}

fn sign(s: i32) -> Q {
    if s < 0 {
        -Q::one()
    } else {
        Q::one()
    }
}

/// Cut one monomial along `c`. Returns `None` when a chord equals or crosses
/// `c`; otherwise the sign and the (outer, inner) monomials.
pub fn reg_monomial(d: &ChordDiagram, c: Chord) -> Result<Option<(Q, ChordDiagram, ChordDiagram)>, ModuliError> {
    let (i, j) = (c.i, c.j);
    let mut outer = Vec::new();
    let mut inner = Vec::new();
    let mut shuffle = 1;
    for b in &d.chords {
        if *b == c || crosses(b, &c) || crosses(&c, b) {
            return Ok(None);
        }
        if i <= b.i && b.j <= j {
            inner.push(Chord { i: b.i - i + 1, j: b.j - i + 1 });
        } else {
            let r = |m: u8| if m < i { m } else if m <= j { i } else { m - (j - i) };
            outer.push(Chord { i: r(b.i), j: r(b.j) });
            if inner.len() % 2 == 1 {
                shuffle = -shuffle;
            }
        }
    }
    let inner_arity = (j - i + 1) as usize;
    let outer_arity = d.arity - (j - i) as usize;
    let (o, s1) = ChordDiagram::from_chords(outer_arity, outer)?;
    let (n, s2) = ChordDiagram::from_chords(inner_arity, inner)?;
    Ok(Some((sign(shuffle * s1 * s2), o, n)))
}

fn check_chord(f: &Form, c: Chord) -> Result<(), ModuliError> {
    if !c.is_valid(f.arity) {
        return Err(polygon_combinatorics::PolygonError::InvalidChord { i: c.i as usize, j: c.j as usize, sides: f.arity }.into());
    }
    Ok(())
}

fn normalised_tensor(raw: BTreeMap<(ChordDiagram, ChordDiagram), Q>, oa: usize, ia: usize) -> Result<TensorForm, ModuliError> {
    let mut out = TensorForm::zero(oa, ia);
    for ((o, i), x) in raw {
        let no = normal_form(&Form::monomial(o))?;
        let ni = normal_form(&Form::monomial(i))?;
        out.add_product(&x, &no, &ni);
    }
    Ok(out)
}

fn cut_arities(f: &Form, c: Chord) -> (usize, usize) {
    (f.arity - (c.j - c.i) as usize, (c.j - c.i + 1) as usize)
}

/// Regularised restriction to the boundary divisor of `c`, both factors in
/// normal form.
pub fn reg_restrict(f: &Form, c: Chord) -> Result<TensorForm, ModuliError> {
    check_chord(f, c)?;
    let mut raw = BTreeMap::new();
    for (d, x) in &f.terms {
        if let Some((s, o, i)) = reg_monomial(d, c)? {
            *raw.entry((o, i)).or_insert_with(Q::default) += s * x;
        }
    }
    let (oa, ia) = cut_arities(f, c);
    normalised_tensor(raw, oa, ia)
}

/// `Reg_c` composed with the left derivative in `alpha_c`. No normal form is
/// taken, so gravity input visibly stays gravity.
pub fn residue(f: &Form, c: Chord) -> Result<TensorForm, ModuliError> {
    check_chord(f, c)?;
    let (oa, ia) = cut_arities(f, c);
    let mut out = TensorForm::zero(oa, ia);
    for (d, x) in &f.terms {
        let Some(pos) = d.chords.iter().position(|b| *b == c) else { continue };
        let mut rest = d.clone();
        rest.chords.remove(pos);
        if let Some((s, o, i)) = reg_monomial(&rest, c)? {
            let s = if pos % 2 == 1 { -s } else { s };
            out.add_term(o, i, s * x);
        }
    }
    Ok(out)
}

pub fn residual_weight(d: &ChordDiagram) -> usize {
    classify(d).residual_weight
}

/// The associated-graded cocomposition: the part of `Reg_c` that keeps the
/// total residual weight. Input is brought to normal form first.
pub fn graded_reg_restrict(f: &Form, c: Chord) -> Result<TensorForm, ModuliError> {
    check_chord(f, c)?;
    let f = normal_form(f)?;
    let (oa, ia) = cut_arities(&f, c);
    let mut out = TensorForm::zero(oa, ia);
    for (d, x) in &f.terms {
        let w = residual_weight(d);
        let t = reg_restrict(&Form::monomial(d.clone()), c)?;
        for ((o, i), y) in &t.terms {
            let wt = residual_weight(o) + residual_weight(i);
            if wt > w {
                return Err(ModuliError::Mismatch(format!("cut of {d} along {c} raised residual weight")));
            }
            if wt == w {
                out.add_term(o.clone(), i.clone(), x * y);
            }
        }
    }
    Ok(out)
}

// Chords of the (n+1)-arity polygon that contract onto `c` when sides i and
// i+1 merge into side i.
fn preimages(n: usize, c: Chord, i: u8) -> Vec<Chord> {
    let (k, l) = (c.i, c.j);
    let raw = if i < k {
        vec![(k + 1, l + 1)]
    } else if i == k {
        vec![(i, l + 1), (i + 1, l + 1)]
    } else if i < l {
        vec![(k, l + 1)]
    } else if i == l {
        vec![(k, i), (k, i + 1)]
    } else {
        vec![(k, l)]
    };
    raw.into_iter().map(|(a, b)| Chord { i: a, j: b }).filter(|b| b.is_valid(n + 1)).collect()
}

/// Pullback along forgetting the point between sides i and i+1.
pub fn pullback(f: &Form, i: usize) -> Result<Form, ModuliError> {
    if i == 0 || i > f.arity {
        return Err(ModuliError::Side { i, n: f.arity });
    }
    let n = f.arity;
    let mut out = Form::zero(n + 1, f.degree);
    for (d, x) in &f.terms {
        let mut acc = Form::one(n + 1);
        for c in &d.chords {
            let mut sum = Form::zero(n + 1, 1);
            for b in preimages(n, *c, i as u8) {
                sum.add_scaled(&Q::one(), &Form::alpha(n + 1, b)?);
            }
            acc = acc.wedge(&sum)?;
        }
        out.add_scaled(x, &acc);
    }
    Ok(out)
}

/// Drop every non-prime term. Meaningful on normal forms.
pub fn regularise(f: &Form) -> Form {
    let mut out = Form::zero(f.arity, f.degree);
    for (d, x) in &f.terms {
        if classify(d).is_prime {
            out.add_term(d.clone(), x.clone());
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Space {
    Open,
    Dihedral,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DimRow {
    pub degree: usize,
    /// Number of (prime) gravity diagrams.
    pub enumerated: usize,
    /// Dimension found by linear algebra.
    pub computed: usize,
}

fn nbc_rank(diagrams: &[ChordDiagram]) -> usize {
    let mut index: BTreeMap<Vec<(u8, u8)>, usize> = BTreeMap::new();
    let vecs: Vec<BTreeMap<Vec<(u8, u8)>, i64>> = diagrams.iter().map(nbc_vector).collect();
    for v in &vecs {
        for k in v.keys() {
            let next = index.len();
            index.entry(k.clone()).or_insert(next);
        }
    }
    let mut ech = Echelon::new(index.len());
    for v in vecs {
        let pairs = v.into_iter().map(|(k, c)| (index[&k], Q::from_integer(c.into())));
        ech.insert(&SparseVec::from_pairs(index.len(), pairs).expect("in range"));
    }
    ech.rank()
}

/// Dimensions by degree, each computed by enumeration and by exact rank.
///
/// Open space: the relation engine gives `monomials - rank(relations)`; the
/// Arnold engine gives the rank of gravity monomials in the nbc basis.
/// Dihedral space: rank of the prime gravity monomials in the nbc basis.
pub fn cohomology_dims(n: usize, space: Space, engine: Engine) -> Result<Vec<DimRow>, ModuliError> {
    let mut rows = Vec::new();
    for degree in 0..=n.saturating_sub(2) {
        let filter = match space {
            Space::Open => Filter::Gravity,
            Space::Dihedral => Filter::PrimeGravity,
        };
        let basis = enumerate(n, degree, filter)?;
        let computed = match (space, engine) {
            (Space::Open, Engine::Relations) => relation_context(n, degree)?.quotient_dim(),
            _ => nbc_rank(&basis),
        };
        if space == Space::Open {
            debug_assert_eq!(basis.len() as u64, gravity_count(n, degree));
        }
        if computed != basis.len() {
            return Err(ModuliError::Mismatch(format!(
                "degree {degree} at arity {n}: {} diagrams but dimension {computed}",
                basis.len()
            )));
        }
        rows.push(DimRow { degree, enumerated: basis.len(), computed });
    }
    Ok(rows)
}
