//! Sequential against data-parallel execution for the two tree engines.
//! Both modes produce bit-identical results; only the wall time differs.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use heston_tree::backward::{price_vanilla_with, BackwardOptions};
use heston_tree::simulate::{simulate_price_with, SimOptions};
use heston_tree::{Execution, GridSpec, HestonParams, PayoffKind, PayoffSpec, TruncationMode};

const MODES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn params() -> HestonParams {
    HestonParams::with_initial_vol(100.0, 0.2, 0.05, 3.0, 0.04, 0.1, -0.7).unwrap()
}

fn backward(c: &mut Criterion) {
    let p = params();
    let t = 0.25;
    let mut group = c.benchmark_group("backward_american_put");
    group.sample_size(10);
    for n in [100usize, 250] {
        let g = GridSpec::new(n, t, &p, TruncationMode::TruncateProb).unwrap();
        let spec = PayoffSpec::american(PayoffKind::Put, 100.0, t).unwrap();
        for (name, execution) in MODES {
            let opts = BackwardOptions { execution, ..BackwardOptions::default() };
            group.bench_with_input(BenchmarkId::new(name, n), &n, |b, _| {
                b.iter(|| price_vanilla_with(&spec, &g, &p, &opts).unwrap())
            });
        }
    }
    group.finish();
}

fn tree_monte_carlo(c: &mut Criterion) {
    let p = params();
    let t = 0.2;
    let g = GridSpec::new(300, t, &p, TruncationMode::TruncateProb).unwrap();
    let spec = PayoffSpec::european(PayoffKind::AsianGeometricCall, 100.0, t).unwrap();
    let mut group = c.benchmark_group("tree_mc_geometric_asian");
    group.sample_size(10);
    for paths in [10_000u64, 40_000] {
        for (name, execution) in MODES {
            let opts = SimOptions { execution, ..SimOptions::default() };
            group.bench_with_input(BenchmarkId::new(name, paths), &paths, |b, &paths| {
                b.iter(|| simulate_price_with(&spec, &g, &p, paths, 7, &opts).unwrap())
            });
        }
    }
    group.finish();
}

criterion_group!(benches, backward, tree_monte_carlo);
criterion_main!(benches);
