use criterion::{black_box, criterion_group, criterion_main, Criterion};
use quasifact::factor::RightParts;
use quasifact::fincat::validate_category;
use quasifact::lifting::{is_qfs, left_class, right_class};
use quasifact::sieves::quasi_monos;
use quasifact::theorems::{default_bindings, run_all};
use quasifact::{preset, Instance};

fn kleisli(n: usize) -> Instance {
    preset(&format!("kleisli{n}")).unwrap()
}

fn construction(c: &mut Criterion) {
    let mut group = c.benchmark_group("construction");
    group.sample_size(10);
    group.bench_function("kleisli3", |b| b.iter(|| kleisli(3)));
    let inst = kleisli(3);
    group.bench_function("validate kleisli3", |b| {
        b.iter(|| validate_category(black_box(&inst.cat)))
    });
    group.finish();
}

fn classes(c: &mut Criterion) {
    let inst = kleisli(3);
    let cat = &inst.cat;
    let (e, m) = (inst.class("E").unwrap(), inst.class("M").unwrap());
    let mut group = c.benchmark_group("kleisli3");
    group.sample_size(10);
    group.bench_function("quasi monos", |b| b.iter(|| quasi_monos(black_box(cat))));
    group.bench_function("right parts of M", |b| b.iter(|| RightParts::new(cat, black_box(m))));
    group.bench_function("left class of M", |b| b.iter(|| left_class(cat, black_box(m))));
    group.bench_function("right class of E", |b| b.iter(|| right_class(cat, black_box(e))));
    group.bench_function("is_qfs", |b| b.iter(|| is_qfs(cat, black_box(e), black_box(m))));
    group.finish();
}

fn registry(c: &mut Criterion) {
    let mut group = c.benchmark_group("registry");
    group.sample_size(10);
    for n in [2, 3] {
        let inst = kleisli(n);
        let bindings = default_bindings(&inst);
        group.bench_function(format!("kleisli{n}"), |b| {
            b.iter(|| run_all(&inst.cat, black_box(&bindings)))
        });
    }
    group.finish();
}

criterion_group!(benches, construction, classes, registry);
criterion_main!(benches);
