use std::hint::black_box;
use std::sync::Arc;

use criterion::{criterion_group, criterion_main, Criterion};
use noloop_bench::{corpus_algebra, presentation, random_batch};
use noloop_core::certifier::{certify_no_loop, path_generated_submodules, CertifyOptions};
use noloop_core::module::RightModule;
use noloop_core::raycat::RayCategory;
use noloop_core::resolution::projective_dimension;
use noloop_core::structure::detect_penny_farthings;
use noloop_core::AlgebraBasis;

fn build(c: &mut Criterion) {
    let p = presentation("example1");
    c.bench_function("build example1", |b| b.iter(|| AlgebraBasis::build(black_box(&p)).unwrap()));
    let batch = random_batch(50, 1);
    c.bench_function("build 50 random monomial", |b| {
        b.iter(|| batch.iter().map(|p| AlgebraBasis::build(p).unwrap().dim()).sum::<usize>())
    });
}

fn resolutions(c: &mut Criterion) {
    for name in ["loopnil2", "example2-ambient", "pf-case-3"] {
        let a = corpus_algebra(name);
        let s = RightModule::simple(&a, 0).unwrap();
        c.bench_function(&format!("pd S_x depth 20 {name}"), |b| b.iter(|| projective_dimension(black_box(&s), 20)));
    }
}

fn structure(c: &mut Criterion) {
    let a = corpus_algebra("example1");
    c.bench_function("ray category example1", |b| b.iter(|| RayCategory::build(black_box(&a)).unwrap()));
    let pf = corpus_algebra("pf-case-1");
    c.bench_function("penny-farthings pf-case-1", |b| b.iter(|| detect_penny_farthings(black_box(&pf))));
    let p = Arc::new(RightModule::projective(&a, 0).unwrap());
    c.bench_function("path-generated submodules example1", |b| {
        b.iter(|| path_generated_submodules(black_box(&p), 100_000).unwrap().len())
    });
}

fn certify(c: &mut Criterion) {
    let opts = CertifyOptions::default();
    for name in ["example1", "pf-case-1"] {
        let a = corpus_algebra(name);
        c.bench_function(&format!("certify {name}"), |b| b.iter(|| certify_no_loop(&a, 0, &opts).unwrap()));
    }
    c.bench_function("corpus run", |b| b.iter(noloopwb::corpus_run::run_checks));
}

criterion_group!(benches, build, resolutions, structure, certify);
criterion_main!(benches);
