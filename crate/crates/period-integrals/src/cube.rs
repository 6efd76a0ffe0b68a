//! Unbiased estimators on the unit cube, sharded so that the result depends
//! only on the seed and the budget, never on the number of workers.

use exact_linalg::{exec, Exec};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

const SHARDS: usize = 32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Mc,
    Stratified,
}

impl std::str::FromStr for Method {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "mc" => Ok(Method::Mc),
            "stratified" => Ok(Method::Stratified),
            _ => Err(format!("unknown method {s}")),
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct Budget {
    pub samples: usize,
    pub seed: u64,
    /// Stop once the standard error is below this; the result is flagged as
    /// partial if the samples run out first.
    pub target_error: Option<f64>,
    pub exec: Exec,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { samples: 400_000, seed: 0, target_error: None, exec: Exec::default() }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PeriodEstimate {
    pub value: f64,
    pub standard_error: f64,
    pub samples: usize,
    pub method: Method,
    pub partial: bool,
}

impl PeriodEstimate {
    pub fn exact(value: f64, method: Method) -> Self {
        PeriodEstimate { value, standard_error: 0.0, samples: 1, method, partial: false }
    }

    /// `|value - target| <= max(k·σ, floor)`.
    pub fn agrees_with(&self, target: f64, k: f64, floor: f64) -> bool {
        (self.value - target).abs() <= (k * self.standard_error).max(floor)
    }
}

/// Running sums for one shard.
#[derive(Clone, Copy, Default)]
struct Acc {
    sum: f64,
    var: f64,
    count: usize,
}

fn shard_rng(seed: u64, round: u64, shard: usize) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(round * SHARDS as u64 + shard as u64);
    r
}

fn split(total: usize, shard: usize) -> std::ops::Range<usize> {
    let base = total / SHARDS;
    let extra = total % SHARDS;
    let start = shard * base + shard.min(extra);
    start..start + base + usize::from(shard < extra)
}

fn mc_round<F>(dim: usize, f: &F, samples: usize, seed: u64, round: u64, ex: Exec) -> Acc
where
    F: Fn(&[f64]) -> Option<f64> + Sync,
{
    let parts = exec::map_range(ex, SHARDS, |s| {
        let mut rng = shard_rng(seed, round, s);
        let mut x = vec![0.0; dim];
        let (mut sum, mut sq) = (0.0, 0.0);
        let r = split(samples, s);
        for _ in r.clone() {
            x.iter_mut().for_each(|v| *v = rng.gen::<f64>());
            let y = f(&x).unwrap_or(0.0);
            sum += y;
            sq += y * y;
        }
        (sum, sq, r.len())
    });
    let (mut sum, mut sq, mut count) = (0.0, 0.0, 0);
    for (a, b, c) in parts {
        sum += a;
        sq += b;
        count += c;
    }
    Acc { sum, var: sq, count }
}

fn mc<F>(dim: usize, f: &F, b: &Budget) -> PeriodEstimate
where
    F: Fn(&[f64]) -> Option<f64> + Sync,
{
    let mut acc = Acc::default();
    let mut round = 0u64;
    let mut chunk = match b.target_error {
        Some(_) => b.samples.min(1 << 14),
        None => b.samples,
    };
    loop {
        let a = mc_round(dim, f, chunk, b.seed, round, b.exec);
        acc.sum += a.sum;
        acc.var += a.var;
        acc.count += a.count;
        let n = acc.count.max(1) as f64;
        let mean = acc.sum / n;
        let var = (acc.var / n - mean * mean).max(0.0) * n / (n - 1.0).max(1.0);
        let se = (var / n).sqrt();
        let done = b.target_error.is_none_or(|t| se <= t);
        if done || acc.count >= b.samples {
            return PeriodEstimate { value: mean, standard_error: se, samples: acc.count, method: Method::Mc, partial: !done };
        }
        round += 1;
        chunk = chunk.min(b.samples - acc.count).max(1);
    }
}

fn stratified_once<F>(dim: usize, f: &F, samples: usize, seed: u64, ex: Exec) -> PeriodEstimate
where
    F: Fn(&[f64]) -> Option<f64> + Sync,
{
    // two jittered samples per cell of a k^dim grid
    let mut k = ((samples / 2).max(1) as f64).powf(1.0 / dim as f64).floor() as usize;
    while (k + 1).pow(dim as u32) * 2 <= samples {
        k += 1;
    }
    let k = k.max(1);
    let cells = k.pow(dim as u32);
    let w = 1.0 / cells as f64;
    let parts = exec::map_range(ex, SHARDS, |s| {
        let mut rng = shard_rng(seed, 0, s);
        let mut x = vec![0.0; dim];
        let (mut sum, mut var) = (0.0, 0.0);
        for cell in split(cells, s) {
            let mut y = [0.0; 2];
            for v in &mut y {
                let mut c = cell;
                for xi in x.iter_mut() {
                    *xi = ((c % k) as f64 + rng.gen::<f64>()) / k as f64;
                    c /= k;
                }
                *v = f(&x).unwrap_or(0.0);
            }
            sum += w * (y[0] + y[1]) / 2.0;
            // per-cell variance of the two-point mean
            var += w * w * (y[0] - y[1]).powi(2) / 4.0;
        }
        (sum, var)
    });
    let (mut sum, mut var) = (0.0, 0.0);
    for (a, b) in parts {
        sum += a;
        var += b;
    }
    PeriodEstimate { value: sum, standard_error: var.sqrt(), samples: 2 * cells, method: Method::Stratified, partial: false }
}

fn stratified<F>(dim: usize, f: &F, b: &Budget) -> PeriodEstimate
where
    F: Fn(&[f64]) -> Option<f64> + Sync,
{
    let Some(t) = b.target_error else {
        return stratified_once(dim, f, b.samples, b.seed, b.exec);
    };
    let mut n = b.samples.min(1 << 14);
    loop {
        let mut e = stratified_once(dim, f, n, b.seed, b.exec);
        if e.standard_error <= t {
            return e;
        }
        if n >= b.samples {
            e.partial = true;
            return e;
        }
        n = (n * 4).min(b.samples);
    }
}

/// `∫_{[0,1]^dim} f`. `None` from `f` marks a rejected sample, counted as 0.
pub fn integrate_cube<F>(dim: usize, f: F, method: Method, budget: &Budget) -> PeriodEstimate
where
    F: Fn(&[f64]) -> Option<f64> + Sync,
{
    if dim == 0 {
        return PeriodEstimate::exact(f(&[]).unwrap_or(0.0), method);
    }
    match method {
        Method::Mc => mc(dim, &f, budget),
        Method::Stratified => stratified(dim, &f, budget),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_integrals() {
        let b = Budget { samples: 20_000, ..Budget::default() };
        for m in [Method::Mc, Method::Stratified] {
            let e = integrate_cube(2, |x| Some(x[0] * x[1]), m, &b);
            assert!(e.agrees_with(0.25, 4.0, 0.0), "{e:?}");
        }
        assert_eq!(integrate_cube(0, |_| Some(3.0), Method::Mc, &b).value, 3.0);
    }

    #[test]
    fn shards_cover_everything() {
        let total: usize = (0..SHARDS).map(|s| split(1001, s).len()).sum();
        assert_eq!(total, 1001);
        assert_eq!(split(1001, SHARDS - 1).end, 1001);
    }

    #[test]
    fn worker_count_does_not_matter() {
        let f = |x: &[f64]| Some((x[0] + x[1]).sin());
        for m in [Method::Mc, Method::Stratified] {
            let a = integrate_cube(2, f, m, &Budget { samples: 5000, exec: Exec::Sequential, ..Budget::default() });
            let b = integrate_cube(2, f, m, &Budget { samples: 5000, exec: Exec::Parallel, ..Budget::default() });
            assert_eq!(a.value.to_bits(), b.value.to_bits());
        }
    }

    #[test]
    fn target_error_flags_partial_results() {
        let b = Budget { samples: 1000, target_error: Some(1e-9), ..Budget::default() };
        let e = integrate_cube(1, |x| Some(x[0]), Method::Mc, &b);
        assert!(e.partial);
        assert_eq!(e.samples, 1000);
    }
}
