use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use nnirank2_bench::products;
use nnirank2_core::exact::smith_normal_form;
use nnirank2_core::{reduce_to_3x3, solve};

fn reduce_vs_direct(c: &mut Criterion) {
    let mut g = c.benchmark_group("table2");
    g.sample_size(10);
    for n in [10, 100, 300] {
        let batch = products(n, 3.0, 3);
        g.bench_with_input(BenchmarkId::new("direct", n), &batch, |b, batch| {
            b.iter(|| batch.iter().map(|a| solve(a).unwrap().verdict).count())
        });
        g.bench_with_input(BenchmarkId::new("reduce_then_factor", n), &batch, |b, batch| {
            b.iter(|| {
                batch
                    .iter()
                    .map(|a| {
                        let (c, _) = reduce_to_3x3(a).unwrap();
                        solve(&c).unwrap().verdict
                    })
                    .count()
            })
        });
    }
    g.finish();
}

fn snf(c: &mut Criterion) {
    let batch = products(100, 10.0, 2);
    c.bench_function("snf/product_n100", |b| b.iter(|| batch.iter().map(smith_normal_form).count()));
}

criterion_group!(benches, reduce_vs_direct, snf);
criterion_main!(benches);
