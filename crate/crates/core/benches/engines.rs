//! Sequential versus rayon-parallel execution of the hot loops.

use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use qcert_core::exec::Strategy;
use qcert_core::kernel::{rat, Product};
use qcert_core::padic::padic_gamma_with;
use qcert_core::qseries::corollary::c26_lhs_terms;

fn strategies() -> Vec<(&'static str, Strategy)> {
    vec![
        ("sequential", Strategy::Sequential),
        #[cfg(feature = "parallel")]
        ("parallel", Strategy::Parallel),
    ]
}

fn gamma(c: &mut Criterion) {
    let mut g = c.benchmark_group("padic_gamma p=13 m=6");
    g.sample_size(10);
    let x = rat(2, 3);
    for (name, s) in strategies() {
        g.bench_function(name, |b| {
            b.iter(|| padic_gamma_with(black_box(&x), 13, 6, s).unwrap())
        });
    }
    g.finish();
}

fn product_mod(c: &mut Criterion) {
    let mut g = c.benchmark_group("product_mod");
    let hi = 13u64.pow(6);
    for (name, s) in strategies() {
        g.bench_with_input(BenchmarkId::new(name, hi), &hi, |b, &hi| {
            b.iter(|| s.product_mod(1, hi, 13, hi))
        });
    }
    g.finish();
}

fn tree_sum(c: &mut Criterion) {
    let mut g = c.benchmark_group("tree_sum c26 terms");
    g.sample_size(10);
    for upper in [6i64, 10] {
        let fracs: Vec<_> = c26_lhs_terms(upper)
            .unwrap()
            .iter()
            .map(Product::to_fraction)
            .collect();
        for (name, s) in strategies() {
            g.bench_with_input(BenchmarkId::new(name, upper), &fracs, |b, f| {
                b.iter(|| s.tree_sum(f.clone()))
            });
        }
    }
    g.finish();
}

criterion_group!(benches, gamma, product_mod, tree_sum);
criterion_main!(benches);
