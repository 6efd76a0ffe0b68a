use std::collections::BTreeMap;

use polygon_combinatorics::{chords_of, cross_ratio_pairs, Chord};

use crate::PeriodError;

/// Points closer than this to each other (or to 0 and 1) are on the boundary.
pub const BOUNDARY_TOLERANCE: f64 = 1e-10;

/// `0 = z_1 < z_2 < ... < z_n = 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct SimplexPoint {
    pub n: usize,
    z: Vec<f64>,
}

impl SimplexPoint {
    /// From the free coordinates `z_2, ..., z_{n-1}`.
    pub fn new(n: usize, free: &[f64]) -> Result<Self, PeriodError> {
        if n < 2 {
            return Err(PeriodError::Arity(n));
        }
        if free.len() != n - 2 {
            return Err(PeriodError::Dimension { expected: n - 2, got: free.len() });
        }
        let mut z = Vec::with_capacity(n);
        z.push(0.0);
        z.extend_from_slice(free);
        z.push(1.0);
        if z.windows(2).any(|w| !(w[0] < w[1])) {
            return Err(PeriodError::Order);
        }
        Ok(SimplexPoint { n, z })
    }

    /// `z_k`, one-based.
    pub fn z(&self, k: usize) -> f64 {
        self.z[k - 1]
    }

    pub fn coordinates(&self) -> &[f64] {
        &self.z
    }

    pub fn min_gap(&self) -> f64 {
        self.z.windows(2).map(|w| w[1] - w[0]).fold(f64::INFINITY, f64::min)
    }
}

/// The factors `(a, b, ±1)` of `log u_c = Σ ±log|z_a - z_b|`, with every
/// factor touching `z_{n+1} = ∞` already cancelled against its partner.
pub fn log_factors(n: usize, c: Chord) -> Vec<(usize, usize, f64)> {
    let (i, j) = (c.i as usize, c.j as usize);
    let inf = |k: usize| k == 0 || k == n + 1;
    let mut out = vec![(i, j, 1.0)];
    match (inf(i - 1), inf(j + 1)) {
        (true, _) => out.push((i, j + 1, -1.0)),
        (_, true) => out.push((i - 1, j, -1.0)),
        _ => {
            out.push((i - 1, j + 1, 1.0));
            out.push((i - 1, j, -1.0));
            out.push((i, j + 1, -1.0));
        }
    }
    out
}

pub fn u_value(n: usize, c: Chord, diff: impl Fn(usize, usize) -> f64) -> f64 {
    log_factors(n, c).into_iter().map(|(a, b, e)| diff(a, b).abs().powf(e)).product()
}

pub fn u_values(n: usize, p: &SimplexPoint) -> Result<BTreeMap<Chord, f64>, PeriodError> {
    if p.n != n {
        return Err(PeriodError::Dimension { expected: n, got: p.n });
    }
    let gap = p.min_gap();
    if gap < BOUNDARY_TOLERANCE {
        return Err(PeriodError::Domain(gap));
    }
    Ok(chords_of(n)?.into_iter().map(|c| (c, u_value(n, c, |a, b| p.z(a) - p.z(b)))).collect())
}

/// `Π_A u + Π_B u - 1` for every cross-ratio relation pair.
pub fn u_relation_defects(n: usize, p: &SimplexPoint) -> Result<Vec<f64>, PeriodError> {
    let u = u_values(n, p)?;
    let prod = |cs: &[Chord]| cs.iter().map(|c| u[c]).product::<f64>();
    Ok(cross_ratio_pairs(n)?.iter().map(|r| prod(&r.a) + prod(&r.b) - 1.0).collect())
}
