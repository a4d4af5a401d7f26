//! Parallel-versus-sequential comparison of the brute-force cores:
//! subgroup sweeps, GL₂ embedding counts, fixed-space scans, and whole
//! audit runs. `cargo bench` runs both lanes of each pair regardless
//! of the crate's `parallel` feature, so the speedup is always visible.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use ramaudit::audit::{load_scenario_str, run_audit_with, RunMode};
use ramaudit::bounds::OdlyzkoTable;
use ramaudit::modrep::{
    embeddings_in_gl2, embeddings_in_gl2_seq, fixed_space_dim, fixed_space_dim_seq, group_preset,
    solvable_subgroup_caps, solvable_subgroup_caps_seq, FiniteGroup, FpMat,
};

fn sigma_pair(n: usize) -> Vec<FpMat> {
    // two commuting order-3 generators on disjoint planes
    let block = |slot: usize| {
        let mut entries = vec![0u8; n * n];
        let o = 2 * slot;
        entries[o * n + (o + 1)] = 1;
        entries[(o + 1) * n + o] = 1;
        entries[(o + 1) * n + (o + 1)] = 1;
        for d in 0..n {
            if d != o && d != o + 1 {
                entries[d * n + d] = 1;
            }
        }
        FpMat::new(2, n, entries).unwrap()
    };
    vec![block(0), block(1)]
}

fn bench_solvable_caps(c: &mut Criterion) {
    let a5 = group_preset("a5").unwrap();
    let mut group = c.benchmark_group("solvable_caps_a5");
    group.sample_size(20);
    group.bench_with_input(BenchmarkId::new("parallel", 60), &a5, |b, g: &FiniteGroup| {
        b.iter(|| solvable_subgroup_caps(g))
    });
    group.bench_with_input(BenchmarkId::new("sequential", 60), &a5, |b, g: &FiniteGroup| {
        b.iter(|| solvable_subgroup_caps_seq(g))
    });
    group.finish();
}

fn bench_embeddings(c: &mut Criterion) {
    let sh16 = group_preset("sh16").unwrap();
    let mut group = c.benchmark_group("embeddings_sh16_gl2f3");
    group.sample_size(20);
    group.bench_with_input(BenchmarkId::new("parallel", 16), &sh16, |b, g: &FiniteGroup| {
        b.iter(|| embeddings_in_gl2(g, 3).unwrap())
    });
    group.bench_with_input(
        BenchmarkId::new("sequential", 16),
        &sh16,
        |b, g: &FiniteGroup| b.iter(|| embeddings_in_gl2_seq(g, 3).unwrap()),
    );
    group.finish();
}

fn bench_fixed_space(c: &mut Criterion) {
    let gens = sigma_pair(8);
    let mut group = c.benchmark_group("fixed_space_f2_dim8");
    group.bench_function("parallel", |b| {
        b.iter(|| fixed_space_dim(&gens).unwrap())
    });
    group.bench_function("sequential", |b| {
        b.iter(|| fixed_space_dim_seq(&gens).unwrap())
    });
    group.finish();
}

fn bench_audit_run(c: &mut Criterion) {
    let text = std::fs::read_to_string(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/scenarios/j032.audit.json"
    ))
    .unwrap();
    let scenario = load_scenario_str(&text).unwrap();
    let table = OdlyzkoTable::embedded();
    let mut group = c.benchmark_group("audit_run_j032");
    group.bench_function("parallel", |b| {
        b.iter(|| run_audit_with(&scenario, RunMode::AsDeclared, &table, true))
    });
    group.bench_function("sequential", |b| {
        b.iter(|| run_audit_with(&scenario, RunMode::AsDeclared, &table, false))
    });
    group.finish();
}

criterion_group!(
    benches,
    bench_solvable_caps,
    bench_embeddings,
    bench_fixed_space,
    bench_audit_run
);
criterion_main!(benches);
