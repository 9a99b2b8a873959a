use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use terracini_core::linalg::{rank_fraction_free, rank_modular};
use terracini_core::locus::secant_dim_estimate;
use terracini_core::rng::{random_point, trial_rng};
use terracini_core::segre::conditions_matrix;
use terracini_core::{delta, Multidegree, MultiprojectiveSpace, PointConfiguration, ZeroDimScheme};

fn random_set(dims: &[usize], r: usize) -> PointConfiguration {
    let space = MultiprojectiveSpace::new(dims.to_vec()).unwrap();
    let mut rng = trial_rng(0, 0);
    let pts = (0..r).map(|_| random_point(&mut rng, &space, 100)).collect();
    PointConfiguration::new(space, pts).unwrap()
}

fn ranks(c: &mut Criterion) {
    let mut g = c.benchmark_group("rank");
    for (dims, r) in [(vec![1, 1, 1, 1], 3), (vec![2, 2, 1], 3), (vec![1; 6], 4), (vec![2, 2, 2, 1], 5)] {
        let s = random_set(&dims, r);
        let m = conditions_matrix(&ZeroDimScheme::double(&s), &Multidegree::all_ones(dims.len())).unwrap();
        let id = format!("{dims:?}x{r}");
        g.bench_with_input(BenchmarkId::new("fraction_free", &id), &m, |b, m| {
            b.iter(|| rank_fraction_free(black_box(m)))
        });
        g.bench_with_input(BenchmarkId::new("mod_65521", &id), &m, |b, m| {
            b.iter(|| rank_modular(black_box(m), 65521).unwrap())
        });
    }
    g.finish();
}

fn defects(c: &mut Criterion) {
    let mut g = c.benchmark_group("delta");
    for (dims, r) in [(vec![1, 1, 1], 3), (vec![1; 5], 3), (vec![3, 2, 1], 4)] {
        let s = random_set(&dims, r);
        g.bench_with_input(BenchmarkId::from_parameter(format!("{dims:?}x{r}")), &s, |b, s| {
            b.iter(|| delta(black_box(s)).unwrap())
        });
    }
    g.finish();
}

fn secant(c: &mut Criterion) {
    let y = MultiprojectiveSpace::new(vec![2, 1, 1, 1]).unwrap();
    c.bench_function("secant_estimate_p2xp1^3_r3", |b| {
        b.iter(|| secant_dim_estimate(black_box(&y), 3, 4, 0).unwrap())
    });
}

criterion_group!(benches, ranks, defects, secant);
criterion_main!(benches);
