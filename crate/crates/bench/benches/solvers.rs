use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use qtsp::anneal::{anneal, Schedule};
use qtsp::qpe::{build_phase_matrix, run_qpe_with};
use qtsp::{build_qubo_sa_form, held_karp, qubo_to_ising, Tour};
use qtsp_bench::fixture;

fn bench_held_karp(c: &mut Criterion) {
    let mut group = c.benchmark_group("held_karp");
    for n in [8, 10, 12] {
        let inst = fixture(n, 1);
        group.bench_with_input(BenchmarkId::from_parameter(n), &inst, |b, inst| {
            b.iter(|| held_karp(inst).unwrap())
        });
    }
    group.finish();
}

fn bench_anneal(c: &mut Criterion) {
    let mut group = c.benchmark_group("anneal");
    for n in [4, 6] {
        let inst = fixture(n, 2);
        let qubo = build_qubo_sa_form(&inst, qtsp::encode::default_penalty(&inst)).unwrap();
        let model = qubo_to_ising(&qubo);
        let sched = Schedule::for_model(&model);
        group.bench_with_input(BenchmarkId::from_parameter(n), &model, |b, model| {
            b.iter(|| anneal(model, &sched, 7))
        });
    }
    group.finish();
}

fn bench_qpe(c: &mut Criterion) {
    let inst = fixture(4, 3);
    let pm = build_phase_matrix(&inst).unwrap();
    let tour = Tour::identity(4);
    c.bench_function("qpe_4_cities_m8", |b| {
        b.iter(|| run_qpe_with(&pm, &tour, 8, 1024, 5).unwrap())
    });
}

criterion_group!(benches, bench_held_karp, bench_anneal, bench_qpe);
criterion_main!(benches);
