use criterion::{black_box, criterion_group, criterion_main, Criterion};
use nalgebra::Vector3;
use relpos_core::classify::classify;
use relpos_core::oracle::{oracle_contact, sample_surface, GridSpec};
use relpos_core::sweep::{sweep, CenterPath};
use relpos_core::{cardano, residual_cubic, root_set, solve_cubic, Sphere, StdHyperboloid};

fn reference_pair() -> (StdHyperboloid, Sphere) {
    (
        StdHyperboloid::new(1.5, 1.6).unwrap(),
        Sphere::new(Vector3::new(2.1, 2.2, 0.3), 1.4).unwrap(),
    )
}

fn bench_fast_path(c: &mut Criterion) {
    let (h, s) = reference_pair();
    c.bench_function("discriminant_fast_path", |b| {
        b.iter(|| {
            let g = residual_cubic(black_box(&h), black_box(&s));
            black_box(cardano(&g).delta)
        })
    });
}

fn bench_root_solve(c: &mut Criterion) {
    let (h, s) = reference_pair();
    let g = residual_cubic(&h, &s);
    c.bench_function("solve_cubic", |b| {
        b.iter(|| black_box(solve_cubic(black_box(&g))))
    });
    c.bench_function("root_set", |b| {
        b.iter(|| black_box(root_set(black_box(&h), black_box(&s))))
    });
}

fn bench_classify(c: &mut Criterion) {
    let (h, s) = reference_pair();
    c.bench_function("classify", |b| {
        b.iter(|| black_box(classify(black_box(&h), black_box(&s)).unwrap()))
    });
}

fn bench_oracle(c: &mut Criterion) {
    let (h, s) = reference_pair();
    let spec = GridSpec::new(128, 128);
    c.bench_function("oracle_128", |b| {
        b.iter(|| {
            let grid = sample_surface(black_box(&h), black_box(&s), &spec);
            black_box(oracle_contact(&grid).unwrap())
        })
    });
}

fn bench_sweep(c: &mut Criterion) {
    let h = StdHyperboloid::new(1.5, 1.6).unwrap();
    let path = CenterPath::waypoints(vec![
        Vector3::new(4.0, 0.0, 0.0),
        Vector3::new(0.0, 0.0, 0.0),
    ])
    .unwrap();
    c.bench_function("sweep_50_steps", |b| {
        b.iter(|| black_box(sweep(black_box(&h), 1.0, &path, 50)))
    });
}

criterion_group!(
    benches,
    bench_fast_path,
    bench_root_solve,
    bench_classify,
    bench_oracle,
    bench_sweep
);
criterion_main!(benches);
