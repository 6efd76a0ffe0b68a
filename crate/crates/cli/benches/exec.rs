//! Sequential against parallel execution on the heavier kernels.

use std::hint::black_box;

use bv_graph_complex::{enumerate_graphs, square_defects, twist_differential};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use exact_linalg::Exec;
use hochschild_complex::{h0, verify_complex, H0Options, Module};
use lie_engines::{solve_grt, ALL_EQUATIONS};
use period_integrals::{integrate_period, Budget, Method};
use polygon_combinatorics::ChordDiagram;

const MODES: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

fn grt(c: &mut Criterion) {
    let mut g = c.benchmark_group("grt_solve_w6");
    g.sample_size(10);
    for (name, exec) in MODES {
        g.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &e| {
            b.iter(|| black_box(solve_grt(6, &ALL_EQUATIONS, e).unwrap().len()))
        });
    }
    g.finish();
}

fn hochschild(c: &mut Criterion) {
    let mut g = c.benchmark_group("hochschild");
    g.sample_size(10);
    for (name, exec) in MODES {
        g.bench_with_input(BenchmarkId::new("verify_dihedral_6", name), &exec, |b, &e| {
            b.iter(|| black_box(verify_complex(Module::Dihedral, 6, e).unwrap().checked))
        });
        g.bench_with_input(BenchmarkId::new("h0_dihedral_6", name), &exec, |b, &e| {
            b.iter(|| black_box(h0(Module::Dihedral, 6, H0Options { exec: e, slow: false }).unwrap().h0))
        });
    }
    g.finish();
}

fn graphs(c: &mut Criterion) {
    let mut g = c.benchmark_group("graph_square");
    g.sample_size(10);
    let gs = enumerate_graphs(2, 2, 5, Exec::Sequential);
    for (name, exec) in MODES {
        g.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &e| {
            b.iter(|| black_box(square_defects(&gs, twist_differential, e).unwrap().len()))
        });
    }
    g.finish();
}

fn periods(c: &mut Criterion) {
    let mut g = c.benchmark_group("period_hexagon");
    g.sample_size(10);
    let p = ChordDiagram::from_pairs(5, &[(1, 3), (1, 4), (2, 5)]).unwrap().0;
    for (name, exec) in MODES {
        let budget = Budget { samples: 50_000, seed: 1, target_error: None, exec };
        g.bench_with_input(BenchmarkId::from_parameter(name), &budget, |b, bud| {
            b.iter(|| black_box(integrate_period(&p, Method::Stratified, bud).unwrap().value))
        });
    }
    g.finish();
}

criterion_group!(benches, grt, hochschild, graphs, periods);
criterion_main!(benches);
