use asmdet_core::detkernel::{build_matrix, det_bareiss, det_cofactor, det_interpolated};
use asmdet_core::oracle::{all_triangles, sigma_statistic};
use asmdet_core::DetInstance;
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

fn engines(c: &mut Criterion) {
    let mut group = c.benchmark_group("determinant engines");
    group.sample_size(10);
    for n in [4usize, 5, 6] {
        let m = build_matrix(DetInstance::new(n, 2).unwrap());
        group.bench_with_input(BenchmarkId::new("cofactor", n), &m, |b, m| b.iter(|| det_cofactor(m).unwrap()));
        group.bench_with_input(BenchmarkId::new("bareiss", n), &m, |b, m| b.iter(|| det_bareiss(m).unwrap()));
        group.bench_with_input(BenchmarkId::new("interpolated", n), &m, |b, m| b.iter(|| det_interpolated(m).unwrap()));
    }
    for n in [8usize, 9] {
        let m = build_matrix(DetInstance::new(n, 2).unwrap());
        group.bench_with_input(BenchmarkId::new("interpolated", n), &m, |b, m| b.iter(|| det_interpolated(m).unwrap()));
    }
    group.finish();
}

fn oracle(c: &mut Criterion) {
    let mut group = c.benchmark_group("monotone triangles");
    group.sample_size(10);
    for n in [4usize, 5, 6] {
        group.bench_with_input(BenchmarkId::new("enumerate and weigh", n), &n, |b, &n| {
            b.iter(|| all_triangles(n, n).unwrap().iter().map(sigma_statistic).sum::<usize>())
        });
    }
    group.finish();
}

criterion_group!(benches, engines, oracle);
criterion_main!(benches);
