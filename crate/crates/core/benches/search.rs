use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use pathwork::constructions::{lift, lift_problems};
use pathwork::corpus;
use pathwork::par;
use pathwork::pathcat::homotopy_equivalences;
use pathwork::syntaxmodel::{check_coverage, coverage_contexts, enumerate_types};
use rayon::ThreadPoolBuilder;
use std::hint::black_box;

fn pools() -> Vec<(&'static str, rayon::ThreadPool)> {
    vec![
        ("sequential", ThreadPoolBuilder::new().num_threads(1).build().unwrap()),
        ("parallel", ThreadPoolBuilder::new().build().unwrap()),
    ]
}

fn coverage(c: &mut Criterion) {
    let mut g = c.benchmark_group("coverage");
    g.sample_size(10);
    let contexts = coverage_contexts();
    for (label, pool) in pools() {
        g.bench_function(label, |b| b.iter(|| pool.install(|| check_coverage(black_box(&contexts), 2))));
    }
    g.finish();
}

fn lifting(c: &mut Criterion) {
    let mut g = c.benchmark_group("lifting");
    let models: Vec<_> = corpus::expecting("path-axioms", true)
        .into_iter()
        .map(|(_, m)| m.path_cat().unwrap())
        .collect();
    for (label, pool) in pools() {
        g.bench_function(label, |b| {
            b.iter(|| {
                pool.install(|| {
                    for p in &models {
                        black_box(homotopy_equivalences(p));
                        for prob in lift_problems(p) {
                            black_box(lift(p, &prob).unwrap());
                        }
                    }
                })
            })
        });
    }
    g.finish();
}

fn map_vs_seq(c: &mut Criterion) {
    let mut g = c.benchmark_group("par-map");
    let types = enumerate_types(&Vec::new(), 2);
    let work = |ty: &pathwork::syntaxmodel::Ty| {
        pathwork::syntaxmodel::enumerate_closed_terms(ty, ty.saturation_bound() + 2)
            .map(|e| e.terms.len())
            .unwrap_or(0)
    };
    g.bench_with_input(BenchmarkId::new("map_seq", types.len()), &types, |b, t| {
        b.iter(|| par::map_seq(black_box(t), work))
    });
    g.bench_with_input(BenchmarkId::new("map", types.len()), &types, |b, t| {
        b.iter(|| par::map(black_box(t), work))
    });
    g.finish();
}

criterion_group!(benches, coverage, lifting, map_vs_seq);
criterion_main!(benches);
