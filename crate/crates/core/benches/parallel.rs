use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use picard::bernoulli::class_number;
use picard::cli::sweep::{sweep, SweepConfig};
use picard::cli::verify::fields_up_to;
use picard::oracle::{sl3_order, EnumerationBudget};
use picard::Execution;

const MODES: [(&str, Execution); 2] = [
    ("sequential", Execution::Sequential),
    ("parallel", Execution::Parallel),
];

fn sl3(c: &mut Criterion) {
    let mut g = c.benchmark_group("sl3_order_5_1");
    g.sample_size(10);
    for (name, exec) in MODES {
        g.bench_function(name, |b| {
            b.iter(|| sl3_order(black_box(5), 1, EnumerationBudget::default(), exec).unwrap())
        });
    }
    g.finish();
}

fn sweeps(c: &mut Criterion) {
    let mut g = c.benchmark_group("sweep");
    g.sample_size(10);
    let config = SweepConfig {
        dmax: 35,
        normmax: 100,
        composite: false,
    };
    for (name, exec) in MODES {
        g.bench_with_input(BenchmarkId::new(name, "35x100"), &config, |b, cfg| {
            b.iter(|| sweep(*cfg, exec).unwrap())
        });
    }
    g.finish();
}

// Class numbers are memoized, so this measures a cold-ish first pass plus lookups.
fn class_numbers(c: &mut Criterion) {
    let fields = fields_up_to(500);
    let mut g = c.benchmark_group("class_numbers_500");
    for (name, exec) in MODES {
        g.bench_function(name, |b| {
            b.iter(|| exec.map(fields.clone(), |k| class_number(&k).unwrap()))
        });
    }
    g.finish();
}

criterion_group!(benches, sl3, sweeps, class_numbers);
criterion_main!(benches);
