use criterion::{criterion_group, criterion_main, Criterion};
use orlicz_core::{gradient, luxemburg_norm, Energy, ExponentSet, Functional, Grid, NFunctionParams, ScalarField};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::hint::black_box;

fn nfunction(c: &mut Criterion) {
    let nf = NFunctionParams::new(1.9, 1.05).unwrap();
    let points: Vec<f64> = (0..64).map(|i| 10f64.powf(-3.0 + 6.0 * i as f64 / 63.0)).collect();
    let mut group = c.benchmark_group("capital_phi");
    group.bench_function("series", |b| b.iter(|| points.iter().map(|&t| nf.capital_phi(black_box(t))).sum::<f64>()));
    group.bench_function("quadrature", |b| {
        b.iter(|| points.iter().map(|&t| nf.capital_phi_quadrature(black_box(t)).unwrap()).sum::<f64>())
    });
    group.finish();
    c.bench_function("young_conjugate", |b| b.iter(|| nf.young_conjugate(black_box(7.5)).unwrap()));
}

fn grid_kernels(c: &mut Criterion) {
    let e = ExponentSet::new(3, 1.9, 1.05, 3.5, 1.0).unwrap();
    let grid = Grid::cube(3, 9, 1.0).unwrap();
    let u = ScalarField::random(&grid, &mut ChaCha8Rng::seed_from_u64(1));
    let nf = e.nfunction();
    let j = Energy::new(Functional::J, &e, &grid).unwrap();
    c.bench_function("gradient_9x9x9", |b| b.iter(|| gradient(black_box(&u))));
    c.bench_function("j_energy_9x9x9", |b| b.iter(|| j.energy(black_box(&u))));
    c.bench_function("j_energy_and_residual_9x9x9", |b| b.iter(|| j.energy_and_residual(black_box(&u))));
    let g = gradient(&u);
    c.bench_function("luxemburg_norm_9x9x9", |b| b.iter(|| luxemburg_norm(black_box(&g), &nf).unwrap()));
}

criterion_group!(benches, nfunction, grid_kernels);
criterion_main!(benches);
