//! Period integrands: `α_P = Π dlog u_c` as a determinant of `∂ log u_c / ∂ z_k`.

use polygon_combinatorics::{classify, enumerate, Chord, ChordDiagram, Filter};

use crate::cube::{integrate_cube, Budget, Method, PeriodEstimate};
use crate::point::{log_factors, BOUNDARY_TOLERANCE};
use crate::PeriodError;

pub const MAX_ARITY: usize = 5;

/// `x = s³ / (s³ + (1-s)³)`, returning `(x, 1 - x, dx/ds)`.
pub(crate) fn end_map(s: f64) -> (f64, f64, f64) {
    let (a, b) = (s * s * s, (1.0 - s).powi(3));
    let d = a + b;
    (a / d, b / d, 3.0 * s * s * (1.0 - s) * (1.0 - s) / (d * d))
}

/// A point of the simplex `0 = z_1 < ... < z_n = 1` built from cube
/// coordinates, with differences kept accurate near collisions.
pub(crate) struct CubePoint {
    /// `z_k` for `k = 1..=n`, stored at `k - 1`.
    pub z: Vec<f64>,
    /// `log x_m` for `m = 2..n-1`, stored at `m - 2`.
    log_x: Vec<f64>,
    pub jacobian: f64,
}

impl CubePoint {
    /// `z_k = x_k x_{k+1} ... x_{n-1}`.
    pub fn new(n: usize, s: &[f64]) -> Self {
        let d = n - 2;
        let mut log_x = vec![0.0; d];
        let mut jac = 1.0;
        for (m, &si) in s.iter().enumerate() {
            let (x, one_minus, dx) = end_map(si);
            log_x[m] = if x < 0.5 { x.ln() } else { (-one_minus).ln_1p() };
            jac *= dx;
        }
        let mut z = vec![0.0; n];
        z[n - 1] = 1.0;
        for k in (2..n).rev() {
            z[k - 1] = z[k] * log_x[k - 2].exp();
            // dz_k/dx_k = z_{k+1}
            jac *= z[k];
        }
        CubePoint { z, log_x, jacobian: jac }
    }

    /// `z_a - z_b` for one-based indices.
    pub fn diff(&self, a: usize, b: usize) -> f64 {
        if a == b {
            return 0.0;
        }
        let (lo, hi, sign) = if a < b { (a, b, -1.0) } else { (b, a, 1.0) };
        if lo == 1 {
            return sign * self.z[hi - 1];
        }
        let s: f64 = self.log_x[lo - 2..hi - 2].iter().sum();
        sign * self.z[hi - 1] * -s.exp_m1()
    }

    pub fn min_gap(&self) -> f64 {
        (1..self.z.len()).map(|k| -self.diff(k, k + 1)).fold(f64::INFINITY, f64::min)
    }
}

/// `∂ log u_c / ∂ z_k` for the free coordinates `k = 2..n-1`.
pub(crate) fn dlog_row(n: usize, c: Chord, diff: &dyn Fn(usize, usize) -> f64, out: &mut [f64]) {
    out.iter_mut().for_each(|v| *v = 0.0);
    for (a, b, e) in log_factors(n, c) {
        let d = diff(a, b);
        if (2..n).contains(&a) {
            out[a - 2] += e / d;
        }
        if (2..n).contains(&b) {
            out[b - 2] -= e / d;
        }
    }
}

pub(crate) fn det(mut m: Vec<Vec<f64>>) -> f64 {
    let k = m.len();
    let mut d = 1.0;
    for c in 0..k {
        let p = (c..k).max_by(|&a, &b| m[a][c].abs().total_cmp(&m[b][c].abs())).unwrap();
        if m[p][c] == 0.0 {
            return 0.0;
        }
        if p != c {
            m.swap(p, c);
            d = -d;
        }
        d *= m[c][c];
        for r in c + 1..k {
            let f = m[r][c] / m[c][c];
            for j in c..k {
                m[r][j] -= f * m[c][j];
            }
        }
    }
    d
}

fn check_top_prime(p: &ChordDiagram) -> Result<(), PeriodError> {
    let n = p.arity;
    if !(3..=MAX_ARITY).contains(&n) {
        return Err(PeriodError::Arity(n));
    }
    if p.degree() != n - 2 {
        return Err(PeriodError::Diagram(format!("{p} is not of top degree {}", n - 2)));
    }
    let cl = classify(p);
    if !cl.is_gravity || !cl.is_prime {
        return Err(PeriodError::Diagram(format!("{p} is not prime gravity")));
    }
    Ok(())
}

/// The integrand of `α_P` on the cube, including all Jacobians.
pub(crate) fn period_integrand(p: &ChordDiagram) -> impl Fn(&[f64]) -> Option<f64> + Sync + '_ {
    let n = p.arity;
    move |s: &[f64]| {
        let pt = CubePoint::new(n, s);
        if pt.min_gap() < BOUNDARY_TOLERANCE {
            return None;
        }
        let diff = |a: usize, b: usize| pt.diff(a, b);
        let rows = p
            .chords
            .iter()
            .map(|&c| {
                let mut r = vec![0.0; n - 2];
                dlog_row(n, c, &diff, &mut r);
                r
            })
            .collect();
        Some(det(rows) * pt.jacobian)
    }
}

/// `∫_{X(n)} α_P` for a prime gravity diagram of top degree.
pub fn integrate_period(p: &ChordDiagram, method: Method, budget: &Budget) -> Result<PeriodEstimate, PeriodError> {
    check_top_prime(p)?;
    Ok(integrate_cube(p.arity - 2, period_integrand(p), method, budget))
}

pub fn prime_top_diagrams(n: usize) -> Result<Vec<ChordDiagram>, PeriodError> {
    if !(3..=MAX_ARITY).contains(&n) {
        return Err(PeriodError::Arity(n));
    }
    Ok(enumerate(n, n - 2, Filter::PrimeGravity)?)
}

/// `m_n ↦ Σ_P (∫ α_P) P`; empty for `n = 3`.
pub fn period_map(n: usize, method: Method, budget: &Budget) -> Result<Vec<(ChordDiagram, PeriodEstimate)>, PeriodError> {
    prime_top_diagrams(n)?.into_iter().map(|p| Ok((p.clone(), integrate_period(&p, method, budget)?))).collect()
}

/// `Σ_{k>=1} k^{-s}` by partial sums with an Euler-Maclaurin tail.
pub fn zeta_series(s: u32, terms: usize) -> f64 {
    let s = s as f64;
    let n = terms.max(10) as f64;
    let head: f64 = (1..=terms.max(10)).rev().map(|k| (k as f64).powf(-s)).sum();
    head + n.powf(1.0 - s) / (s - 1.0) - 0.5 * n.powf(-s) + s / 12.0 * n.powf(-s - 1.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cube_point_is_increasing() {
        let p = CubePoint::new(5, &[0.3, 0.7, 0.5]);
        assert!(p.z.windows(2).all(|w| w[0] < w[1]));
        assert!((p.diff(3, 2) - (p.z[2] - p.z[1])).abs() < 1e-15);
    }

    #[test]
    fn series() {
        assert!((zeta_series(2, 1000) - std::f64::consts::PI.powi(2) / 6.0).abs() < 1e-12);
    }

    #[test]
    fn determinant() {
        assert_eq!(det(vec![vec![0.0, 2.0], vec![3.0, 1.0]]), -6.0);
    }
}
