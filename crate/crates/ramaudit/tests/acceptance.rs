//! Acceptance gate: one test (and one pass/fail line) per criterion,
//! each with an explicit wall-clock budget. Run with `--nocapture` to
//! see the timing lines; the per-test ok/FAILED verdicts are the gate.

use std::path::PathBuf;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use ramaudit::audit::{
    exit_code, load_scenario, load_scenario_value, run_audit, RunMode, Verdict,
};
use ramaudit::bounds::OdlyzkoTable;
use ramaudit::conductor::{
    enumerate_cases, mestre_check, wild_mass_level_bound, CaseConstraints, ReductionData,
};
use ramaudit::exact::{rat, rat_int, Rational};
use ramaudit::filtration::{
    different_valuation, herbrand_phi, herbrand_psi, is_level, level_bound_holds, u_max,
    RamFiltration,
};
use ramaudit::modrep::{
    degree_partition, embeddings_in_gl2, fixed_space_dim, group_preset, solvable_subgroup_caps,
    F2S3Module, FpMat,
};
use ramaudit::newform::{
    catalogue, classify_table, max_level_exponent, newform_level_of_ram, surviving_newforms,
};

fn done(criterion: &str, start: Instant, budget_secs: f64) {
    let elapsed = start.elapsed().as_secs_f64();
    assert!(
        elapsed < budget_secs,
        "{criterion}: took {elapsed:.3}s, budget {budget_secs}s"
    );
    println!("acceptance {criterion}: pass in {elapsed:.3}s (budget {budget_secs}s)");
}

fn scenario_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("scenarios")
        .join(name)
}

// -- 1 -----------------------------------------------------------------

#[test]
fn criterion_1_classifies_all_nineteen_newform_rows() {
    let start = Instant::now();
    let table = classify_table().expect("classification succeeds");
    assert_eq!(table.len(), 19);
    let records = catalogue();
    assert_eq!(records.len(), 19);
    for ((label, u), record) in table.iter().zip(records.iter()) {
        assert_eq!(*label, record.label);
        assert_eq!(*u, newform_level_of_ram(record).unwrap(), "{label}");
    }
    let labels: std::collections::BTreeSet<&str> = table.iter().map(|(l, _)| *l).collect();
    assert_eq!(labels.len(), 19, "labels are distinct");
    done("1/8 newform table", start, 1.0);
}

// -- 2 -----------------------------------------------------------------

#[test]
fn criterion_2_level_ceilings_and_survivors() {
    let start = Instant::now();
    for (p, n_max) in [(2u64, 6u32), (3, 4), (5, 2), (7, 2)] {
        let m = max_level_exponent(p).unwrap();
        assert_eq!(m.n_max, n_max, "p = {p}");
    }
    assert_eq!(surviving_newforms().unwrap(), ["32A", "27A", "49A", "49B"]);
    done("2/8 level ceilings and survivors", start, 1.0);
}

// -- 3 -----------------------------------------------------------------

#[test]
fn criterion_3_herbrand_inversion_over_a_thousand_chains() {
    let start = Instant::now();

    // the four-torsion reference chain
    let f = RamFiltration::totally_ramified(vec![24, 12, 4, 4, 4]).unwrap();
    assert_eq!(u_max(&f).unwrap(), rat_int(1));
    assert_eq!(different_valuation(&f).unwrap(), rat(43, 24));

    // seeded sweep
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut count = 0u32;
    while count < 1000 {
        let len = rng.gen_range(1..=6);
        let mut a: Vec<u32> = (0..len).map(|_| rng.gen_range(0..=5)).collect();
        let mut b: Vec<u32> = (0..len).map(|_| rng.gen_range(0..=3)).collect();
        a.sort_unstable_by(|x, y| y.cmp(x));
        b.sort_unstable_by(|x, y| y.cmp(x));
        let mut orders: Vec<u64> = a
            .iter()
            .zip(&b)
            .map(|(&x, &y)| 2u64.pow(x) * 3u64.pow(y))
            .collect();
        if orders[0] == 1 {
            orders[0] = 2;
        }
        let total = orders[0] * rng.gen_range(1..=4);
        let f = RamFiltration::new(orders, total).unwrap();

        let top = u_max(&f).unwrap();
        assert!(is_level(&f, &top).unwrap());
        assert!(level_bound_holds(&f, 1, &top).unwrap());
        // two independent routes to the different are compared inside
        different_valuation(&f).unwrap();
        for u in [rat_int(0), rat(1, 2), rat_int(1), rat(7, 3), top.clone()] {
            let v = herbrand_phi(&f, &u).unwrap();
            assert_eq!(herbrand_psi(&f, &v).unwrap(), u);
        }
        count += 1;
    }
    assert_eq!(count, 1000);
    done("3/8 Herbrand inversion on 1000 chains", start, 10.0);
}

// -- 4 -----------------------------------------------------------------

#[test]
fn criterion_4_scenarios_run_end_to_end() {
    let start = Instant::now();
    let table = OdlyzkoTable::embedded();
    for name in [
        "j032.audit.json",
        "j027.audit.json",
        "j049.audit.json",
        "conductors.audit.json",
    ] {
        let scenario = load_scenario(&scenario_path(name)).unwrap();
        let results = run_audit(&scenario, RunMode::AsDeclared, &table);
        assert!(
            results.iter().all(|r| r.verdict != Verdict::Fail),
            "{name} has failing checks"
        );
        assert_eq!(exit_code(&results), 0, "{name}");
    }
    done("4/8 scenarios end-to-end", start, 5.0);
}

// -- 5 -----------------------------------------------------------------

fn perm_matrix(pi: &[usize]) -> FpMat {
    let n = pi.len();
    let mut entries = vec![0u8; n * n];
    for (c, &r) in pi.iter().enumerate() {
        entries[r * n + c] = 1;
    }
    FpMat::new(2, n, entries).unwrap()
}

#[test]
fn criterion_5_group_and_module_brute_forces() {
    let start = Instant::now();

    // exhaustive embedding count of the order-16 image into GL₂(F₃)
    let sh16 = group_preset("sh16").unwrap();
    let report = embeddings_in_gl2(&sh16, 3).unwrap();
    assert_eq!(report.count_up_to_conjugacy, 2);
    assert_eq!(report.count_total, 48);

    // subgroup sweep of the alternating group on five letters
    let a5 = group_preset("a5").unwrap();
    assert_eq!(solvable_subgroup_caps(&a5), (12, 5));
    // no two-dimensional faithful congruence image exists
    assert!(degree_partition(&a5, 2).is_err());
    assert!(degree_partition(&a5, 3).is_err());

    // F₂[S₃]-modules: the standard module and the permutation module
    // are semisimple, the regular module is not
    let standard = F2S3Module::new(
        FpMat::new(2, 2, vec![0, 1, 1, 1]).unwrap(),
        FpMat::new(2, 2, vec![0, 1, 1, 0]).unwrap(),
    )
    .unwrap();
    assert!(standard.is_semisimple());
    assert_eq!(standard.submodules().len(), 2); // 0 and the whole module

    let perm = F2S3Module::new(perm_matrix(&[1, 2, 0]), perm_matrix(&[1, 0, 2])).unwrap();
    assert!(perm.is_semisimple());
    assert_eq!(perm.sigma_trivial_irreducible_submodules(), 1);

    // regular module: index a + 3b encodes σᵃτᵇ
    let regular = F2S3Module::new(
        perm_matrix(&[1, 2, 0, 4, 5, 3]),
        perm_matrix(&[3, 5, 4, 0, 2, 1]),
    )
    .unwrap();
    assert!(!regular.is_semisimple());

    done("5/8 group and module brute forces", start, 60.0);
}

// -- 6 -----------------------------------------------------------------

/// σ of order 3 on F₂ⁿ: companion blocks of x²+x+1 at the given block
/// slots, identity elsewhere, conjugated by a transvection product.
fn conjugated_sigma(n: usize, blocks: &[usize], moves: &[(usize, usize)]) -> FpMat {
    let mut entries = vec![0u8; n * n];
    let mut used = vec![false; n];
    for &b in blocks {
        let o = 2 * b;
        entries[o * n + (o + 1)] = 1;
        entries[(o + 1) * n + o] = 1;
        entries[(o + 1) * n + (o + 1)] = 1;
        used[o] = true;
        used[o + 1] = true;
    }
    for d in 0..n {
        if !used[d] {
            entries[d * n + d] = 1;
        }
    }
    let c = FpMat::new(2, n, entries).unwrap();
    let mut t = FpMat::identity(2, n).unwrap();
    for &(i, j) in moves {
        let (i, j) = (i % n, j % n);
        if i == j {
            continue;
        }
        let mut e = vec![0u8; n * n];
        for k in 0..n {
            e[k * n + k] = 1;
        }
        e[i * n + j] = 1;
        t = t.mul(&FpMat::new(2, n, e).unwrap());
    }
    t.inverse().unwrap().mul(&c).mul(&t)
}

#[test]
fn criterion_6_orbit_fixed_space_sweep() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x0f1b);
    let mut instances = 0u32;
    while instances < 500 {
        let d = rng.gen_range(1..=3usize);
        let n = 2 * d;
        let moves: Vec<(usize, usize)> = (0..rng.gen_range(0..=10))
            .map(|_| (rng.gen_range(0..n), rng.gen_range(0..n)))
            .collect();
        let two_generators = d >= 2 && instances % 7 == 0;
        let (gens, expect_fixed, expect_order) = if two_generators {
            // disjoint blocks commute: a 3-group of order 9
            let g1 = conjugated_sigma(n, &[0], &moves);
            let g2 = conjugated_sigma(n, &[1], &moves);
            (vec![g1, g2], n - 4, 9)
        } else {
            let k = rng.gen_range(1..=d);
            let blocks: Vec<usize> = (0..k).collect();
            (vec![conjugated_sigma(n, &blocks, &moves)], n - 2 * k, 3)
        };
        let report = fixed_space_dim(&gens).unwrap();
        assert_eq!(report.ambient_dim, n);
        assert_eq!(report.fixed_dim, expect_fixed);
        assert_eq!(report.group_order, expect_order);
        assert!(!report.trivial_action);
        assert_eq!(report.fixed_dim % 2, 0, "codimension is even");
        instances += 1;
    }
    assert_eq!(instances, 500);
    done("6/8 orbit fixed-space sweep (500 instances)", start, 30.0);
}

// -- 7 -----------------------------------------------------------------

#[test]
fn criterion_7_conductor_case_enumeration() {
    let start = Instant::now();
    let triples = |cases: &[ReductionData]| -> Vec<(u32, u32, Rational)> {
        cases.iter().map(|r| (r.u, r.t, r.delta.clone())).collect()
    };

    let all = enumerate_cases(2, 1, &CaseConstraints::default()).unwrap();
    assert_eq!(
        triples(&all),
        vec![
            (0, 0, rat_int(2)),
            (0, 1, rat_int(1)),
            (1, 0, rat_int(0)),
        ]
    );

    let u_pos = CaseConstraints {
        require_u_positive: true,
        require_delta_zero: false,
    };
    assert_eq!(triples(&enumerate_cases(2, 1, &u_pos).unwrap()), vec![(1, 0, rat_int(0))]);
    assert_eq!(triples(&enumerate_cases(3, 1, &u_pos).unwrap()), vec![(1, 0, rat_int(1))]);

    let c3 = ReductionData::new(1, 0, rat_int(1), 1).unwrap();
    assert_eq!(c3.conductor_exponent(), rat_int(3));
    assert_eq!(wild_mass_level_bound(&rat_int(1), 2).unwrap(), rat(1, 2));
    assert!(mestre_check(27, 1));
    assert!(!mestre_check(27, 2));

    done("7/8 conductor case enumeration", start, 1.0);
}

// -- 8 -----------------------------------------------------------------

/// Applies a mutation to a shipped scenario and asserts that the run
/// then contains at least one FAIL.
fn mutation_fails(name: &str, describe: &str, mutate: impl FnOnce(&mut serde_json::Value)) {
    let text = std::fs::read_to_string(scenario_path(name)).unwrap();
    let mut value: serde_json::Value = serde_json::from_str(&text).unwrap();
    mutate(&mut value);
    let scenario = load_scenario_value(&value)
        .unwrap_or_else(|e| panic!("{name} [{describe}]: mutation must stay loadable: {e}"));
    let table = OdlyzkoTable::embedded();
    let results = run_audit(&scenario, RunMode::AsDeclared, &table);
    assert!(
        results.iter().any(|r| r.verdict == Verdict::Fail),
        "{name} [{describe}]: mutation must produce a FAIL"
    );
    assert_eq!(exit_code(&results), 1, "{name} [{describe}]");
}

fn set(v: &mut serde_json::Value, pointer: &str, new: serde_json::Value) {
    *v.pointer_mut(pointer)
        .unwrap_or_else(|| panic!("pointer {pointer} missing")) = new;
}

#[test]
fn criterion_8_designated_mutations_all_fail() {
    use serde_json::json;
    let start = Instant::now();

    mutation_fails("j032.audit.json", "perturb 400-digit bound display", |v| {
        set(v, "/checks/0/expect_approx", json!("29.395"));
    });
    mutation_fails("j032.audit.json", "tighten degree cap to a non-row", |v| {
        set(v, "/checks/1/expect_cap", json!(1100));
    });
    mutation_fails("j032.audit.json", "shift the two-adic level", |v| {
        set(v, "/checks/2/expect_level", json!("2"));
    });
    mutation_fails("j027.audit.json", "inflate the different", |v| {
        set(v, "/checks/3/expect", json!("7/4"));
    });
    mutation_fails("j027.audit.json", "bump the triadic root-disc exponent", |v| {
        set(v, "/checks/0/expect_radical/3", json!("5/2"));
    });
    mutation_fails("j049.audit.json", "overstate the solvable cap", |v| {
        set(v, "/checks/2/expect_solvable", json!(24));
    });
    mutation_fails("j049.audit.json", "deny the normal Klein subgroup", |v| {
        set(v, "/checks/3/cases/2/expect_present", json!(false));
    });
    mutation_fails("j049.audit.json", "loosen the conductor-route cap", |v| {
        set(v, "/checks/8/expect_cap", json!(96));
    });
    mutation_fails("conductors.audit.json", "drop an admissible case", |v| {
        set(v, "/checks/0/expect_cases", json!([[0, 0, 2], [0, 1, 1]]));
    });
    mutation_fails("conductors.audit.json", "overstate the exponent", |v| {
        set(v, "/checks/3/expect", json!("4"));
    });

    done("8/8 ten designated mutations each FAIL", start, 10.0);
}
