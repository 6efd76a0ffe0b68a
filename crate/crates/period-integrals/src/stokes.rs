//! Stokes relations: the boundary integral of `α_P` for `P` of degree one
//! below the top, face by face.
//!
//! The face of a chord `c = [i,j]` is where `z_i, ..., z_j` collide. Near it
//! a point is an outer configuration (the cluster replaced by one point), an
//! inner configuration (the cluster rescaled to `[0,1]`) and the cluster
//! size `ε`. Face integrals pull `α_P` back at a tiny `ε`, so they do not
//! rely on the combinatorial restriction; [`boundary_terms`] gives the latter
//! for comparison.

use moduli_cohomology::{reg_restrict, Form, TensorForm};
use polygon_combinatorics::{chords_of, classify, Chord, ChordDiagram};
use serde::Serialize;

use crate::cube::{integrate_cube, Budget, Method, PeriodEstimate};
use crate::forms::{det, CubePoint, MAX_ARITY};
use crate::point::log_factors;
use crate::PeriodError;

const FACE_EPS: f64 = 1e-14;
const FACE_GAP: f64 = 1e-8;

/// Coordinates near the face of `c`.
struct Collar {
    n: usize,
    i: usize,
    j: usize,
    /// Inner offsets are measured from `w = anchor`, so that a cluster
    /// containing `z_n = 1` stays pinned there.
    anchor: f64,
}

impl Collar {
    fn new(n: usize, c: Chord) -> Self {
        let (i, j) = (c.i as usize, c.j as usize);
        Collar { n, i, j, anchor: if j == n { 1.0 } else { 0.0 } }
    }

    fn m(&self) -> usize {
        self.j - self.i + 1
    }

    fn outer_arity(&self) -> usize {
        self.n - self.m() + 1
    }

    /// Outer index of `z_k`, and the inner index if `z_k` is in the cluster.
    fn place(&self, k: usize) -> (usize, Option<usize>) {
        if k < self.i {
            (k, None)
        } else if k <= self.j {
            (self.i, Some(k - self.i + 1))
        } else {
            (k - self.m() + 1, None)
        }
    }

    /// Free coordinates: outer `y_2..y_{no-1}`, then inner `w_2..w_{m-1}`.
    fn free_index(&self, outer: Option<usize>, inner: Option<usize>) -> Option<usize> {
        let no = self.outer_arity();
        match (outer, inner) {
            (Some(l), None) if (2..no).contains(&l) => Some(l - 2),
            (None, Some(l)) if (2..self.m()).contains(&l) => Some(no - 2 + l - 2),
            _ => None,
        }
    }

    /// `∂z_k / ∂(free coordinates)` as a list of (column, value).
    fn tangent(&self, k: usize, eps: f64) -> Vec<(usize, f64)> {
        let (o, inner) = self.place(k);
        let mut out = Vec::new();
        if let Some(c) = self.free_index(Some(o), None) {
            out.push((c, 1.0));
        }
        if let Some(l) = inner {
            if let Some(c) = self.free_index(None, Some(l)) {
                out.push((c, eps));
            }
        }
        out
    }

    /// Adds `e · d log|z_a - z_b|` in face coordinates to `row`. Within the
    /// cluster the factor `ε` cancels before any arithmetic is done.
    #[allow(clippy::too_many_arguments)]
    fn dlog_factor(&self, y: &CubePoint, w: &CubePoint, eps: f64, a: usize, b: usize, e: f64, row: &mut [f64]) {
        let (oa, ia) = self.place(a);
        let (ob, ib) = self.place(b);
        if oa == ob {
            let (p, q) = (ia.unwrap(), ib.unwrap());
            let d = w.diff(p, q);
            for (l, sgn) in [(p, 1.0), (q, -1.0)] {
                if let Some(cidx) = self.free_index(None, Some(l)) {
                    row[cidx] += e * sgn / d;
                }
            }
            return;
        }
        let d = self.diff(y, w, eps, a, b);
        for (k, sgn) in [(a, 1.0), (b, -1.0)] {
            for (cidx, v) in self.tangent(k, eps) {
                row[cidx] += e * sgn * v / d;
            }
        }
    }

    fn diff(&self, y: &CubePoint, w: &CubePoint, eps: f64, a: usize, b: usize) -> f64 {
        let (oa, ia) = self.place(a);
        let (ob, ib) = self.place(b);
        let base = if oa == ob { 0.0 } else { y.diff(oa, ob) };
        let off = |x: Option<usize>| x.map(|l| w.z[l - 1] - self.anchor).unwrap_or(0.0);
        let offset = match (ia, ib) {
            (Some(p), Some(q)) => w.diff(p, q),
            _ => off(ia) - off(ib),
        };
        base + eps * offset
    }
}

/// Sign relating the boundary orientation of the face of `c` (outward normal
/// first) to the product orientation `X(n/I) × X(I)`.
pub fn face_orientation(n: usize, c: Chord) -> Result<i8, PeriodError> {
    if !c.is_valid(n) {
        return Err(PeriodError::Diagram(format!("{c} is not a chord of arity {n}")));
    }
    let col = Collar::new(n, c);
    let d = n - 2;
    let w = CubePoint::new(col.m(), &vec![0.5; col.m() - 2]);
    // columns: ε first, then the face coordinates
    let mut jac = vec![vec![0.0; d]; d];
    for k in 2..n {
        let (_, inner) = col.place(k);
        jac[k - 2][0] = inner.map(|l| w.z[l - 1] - col.anchor).unwrap_or(0.0);
        for (cidx, v) in col.tangent(k, 1e-3) {
            jac[k - 2][cidx + 1] = v;
        }
    }
    let s = det(jac);
    Ok(if s > 0.0 { -1 } else { 1 })
}

fn face_integrand<'a>(p: &'a ChordDiagram, c: Chord) -> (usize, impl Fn(&[f64]) -> Option<f64> + Sync + 'a) {
    let n = p.arity;
    let col = Collar::new(n, c);
    let (no, m) = (col.outer_arity(), col.m());
    let dim = n - 3;
    let f = move |s: &[f64]| {
        let y = CubePoint::new(no, &s[..no - 2]);
        let w = CubePoint::new(m, &s[no - 2..]);
        if y.min_gap() < FACE_GAP || w.min_gap() < FACE_GAP {
            return None;
        }
        let rows = p
            .chords
            .iter()
            .map(|&b| {
                let mut r = vec![0.0; dim];
                for (a, b, e) in log_factors(n, b) {
                    col.dlog_factor(&y, &w, FACE_EPS, a, b, e, &mut r);
                }
                r
            })
            .collect();
        Some(det(rows) * y.jacobian * w.jacobian)
    };
    (dim, f)
}

#[derive(Clone, Debug, Serialize)]
pub struct FaceEstimate {
    pub chord: Chord,
    pub orientation: i8,
    /// Already multiplied by `orientation`.
    pub estimate: PeriodEstimate,
}

#[derive(Clone, Debug, Serialize)]
pub struct StokesReport {
    pub diagram: ChordDiagram,
    pub total: PeriodEstimate,
    pub faces: Vec<FaceEstimate>,
}

fn check_prime_sub_top(p: &ChordDiagram) -> Result<(), PeriodError> {
    let n = p.arity;
    if !(4..=MAX_ARITY).contains(&n) {
        return Err(PeriodError::Arity(n));
    }
    if p.degree() + 3 != n {
        return Err(PeriodError::Diagram(format!("{p} is not of degree {}", n - 3)));
    }
    let cl = classify(p);
    if !cl.is_gravity || !cl.is_prime {
        return Err(PeriodError::Diagram(format!("{p} is not prime gravity")));
    }
    Ok(())
}

/// `∫_{∂X(n)} α_P`, which Stokes' theorem says is zero.
pub fn stokes_defect(p: &ChordDiagram, method: Method, budget: &Budget) -> Result<StokesReport, PeriodError> {
    check_prime_sub_top(p)?;
    let mut faces = Vec::new();
    for c in chords_of(p.arity)? {
        let o = face_orientation(p.arity, c)?;
        let (dim, f) = face_integrand(p, c);
        let mut e = integrate_cube(dim, f, method, budget);
        e.value *= o as f64;
        faces.push(FaceEstimate { chord: c, orientation: o, estimate: e });
    }
    let value = faces.iter().map(|f| f.estimate.value).sum();
    let se = faces.iter().map(|f| f.estimate.standard_error.powi(2)).sum::<f64>().sqrt();
    let total = PeriodEstimate {
        value,
        standard_error: se,
        samples: faces.iter().map(|f| f.estimate.samples).sum(),
        method,
        partial: faces.iter().any(|f| f.estimate.partial),
    };
    Ok(StokesReport { diagram: p.clone(), total, faces })
}

/// The nonzero regularised restrictions of `α_P`, with face orientations.
pub fn boundary_terms(p: &ChordDiagram) -> Result<Vec<(Chord, i8, TensorForm)>, PeriodError> {
    let f = Form::monomial(p.clone());
    let mut out = Vec::new();
    for c in chords_of(p.arity)? {
        let t = reg_restrict(&f, c)?;
        if !t.is_zero() {
            out.push((c, face_orientation(p.arity, c)?, t));
        }
    }
    Ok(out)
}
