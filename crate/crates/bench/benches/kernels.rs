use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use sunrigid::heisenberg::{LatticePresentation, Word};
use sunrigid::jetgroup::JetTransformation;
use sunrigid::normalization::{perturb_scaling, sternberg_normalize};
use sunrigid::rigidity::final_kernel;
use sunrigid::scalar::{q, qf, Q};
use sunrigid::su_grading::{full_basis, induced_vector_field, phi_chart_jet};

/// Deterministic sparse `+-1/10` perturbation, one slot in eight.
fn perturbed(n: usize, k: i64, r: u32) -> JetTransformation {
    let mut i = 0u64;
    let pick = move || -> Q {
        i += 1;
        match i % 16 {
            3 => qf(1, 10),
            11 => qf(-1, 10),
            _ => q(0),
        }
    };
    perturb_scaling(n, k, r, pick).unwrap()
}

fn composition(c: &mut Criterion) {
    let mut group = c.benchmark_group("jet_compose");
    for r in [3u32, 5] {
        let f = perturbed(2, 2, r);
        let g = perturbed(2, 3, r);
        group.bench_with_input(BenchmarkId::from_parameter(r), &r, |b, _| b.iter(|| black_box(&f).compose(black_box(&g)).unwrap()));
    }
    group.finish();
}

fn normalization(c: &mut Criterion) {
    let mut group = c.benchmark_group("sternberg_normalize");
    group.sample_size(10);
    for (n, r) in [(1usize, 5u32), (2, 3), (2, 5)] {
        let f = perturbed(n, 2, r);
        group.bench_function(format!("n{n}_r{r}"), |b| b.iter(|| sternberg_normalize(black_box(&f)).unwrap()));
    }
    group.finish();
}

fn chart_jets(c: &mut Criterion) {
    let lat = LatticePresentation::standard(2, 3);
    let w: Word = "a b1 a^-1 b1^-3".parse().unwrap();
    c.bench_function("phi_chart_jet_relator_r6", |b| b.iter(|| phi_chart_jet(black_box(&w), &lat, 6).unwrap()));
}

fn brackets(c: &mut Criterion) {
    let n = 2;
    let fields: Vec<_> = full_basis(n).iter().map(|e| induced_vector_field(&e.materialize(n))).collect();
    c.bench_function("iota0_all_brackets_n2", |b| {
        b.iter(|| {
            for x in &fields {
                for y in &fields {
                    black_box(x.lie_bracket(y));
                }
            }
        })
    });
}

fn kernel(c: &mut Criterion) {
    let mut group = c.benchmark_group("final_kernel");
    group.sample_size(10);
    for n in [1usize, 2] {
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, &n| b.iter(|| final_kernel(n)));
    }
    group.finish();
}

criterion_group!(benches, composition, normalization, chart_jets, brackets, kernel);
criterion_main!(benches);
