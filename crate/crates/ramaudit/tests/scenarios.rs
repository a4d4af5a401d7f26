//! End-to-end runs of the shipped audit scenarios: every check must
//! pass as declared, GRH-conditional checks must degrade to SKIP under
//! the unconditional mode, machine reports must be byte-stable, and
//! the quoted ray-class facts must cover the expected conductors.

use std::collections::BTreeSet;
use std::path::PathBuf;

use ramaudit::audit::{
    exit_code, load_scenario, render_report, run_audit, AuditScenario, ReportFormat, RunMode,
    Verdict,
};
use ramaudit::bounds::OdlyzkoTable;

const SCENARIOS: [&str; 4] = [
    "j032.audit.json",
    "j027.audit.json",
    "j049.audit.json",
    "conductors.audit.json",
];

fn scenario_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("scenarios")
        .join(name)
}

fn load(name: &str) -> AuditScenario {
    load_scenario(&scenario_path(name)).unwrap_or_else(|e| panic!("loading {name}: {e}"))
}

#[test]
fn every_shipped_scenario_passes_as_declared() {
    let table = OdlyzkoTable::embedded();
    for name in SCENARIOS {
        let scenario = load(name);
        let results = run_audit(&scenario, RunMode::AsDeclared, &table);
        for r in &results {
            assert_ne!(
                r.verdict,
                Verdict::Fail,
                "{name} check {} failed: computed={} bound={} details={:?}",
                r.id,
                r.computed,
                r.bound,
                r.details
            );
            assert_ne!(r.verdict, Verdict::Skipped, "{name} skipped {}", r.id);
        }
        assert_eq!(exit_code(&results), 0, "{name} should exit 0");
    }
}

#[test]
fn shipped_scenarios_have_the_declared_shape() {
    let expected: [(&str, usize, usize); 4] = [
        ("j032.audit.json", 9, 5),
        ("j027.audit.json", 7, 4),
        ("j049.audit.json", 9, 3),
        ("conductors.audit.json", 8, 2),
    ];
    for (name, checks, facts) in expected {
        let s = load(name);
        assert_eq!(s.checks.len(), checks, "{name}: check count");
        assert_eq!(s.facts.len(), facts, "{name}: fact count");
    }
}

#[test]
fn unconditional_mode_skips_grh_checks_without_failing() {
    let table = OdlyzkoTable::embedded();
    let scenario = load("j049.audit.json");
    let results = run_audit(&scenario, RunMode::UnconditionalOnly, &table);
    let skipped: BTreeSet<&str> = results
        .iter()
        .filter(|r| r.verdict == Verdict::Skipped)
        .map(|r| r.id.as_str())
        .collect();
    let expected: BTreeSet<&str> = ["k2", "k5", "k6", "k7", "k9"].into_iter().collect();
    assert_eq!(skipped, expected, "GRH-conditional checks must be skipped");
    assert!(results.iter().all(|r| r.verdict != Verdict::Fail));
    assert_eq!(exit_code(&results), 0);

    // The same checks evaluate (and pass) when run as declared.
    let declared = run_audit(&scenario, RunMode::AsDeclared, &table);
    for id in expected {
        let r = declared.iter().find(|r| r.id == id).unwrap();
        assert_eq!(r.verdict, Verdict::Pass, "{id} should pass as declared");
    }
}

#[test]
fn machine_reports_are_byte_stable() {
    let table = OdlyzkoTable::embedded();
    for name in SCENARIOS {
        let scenario = load(name);
        let render = || {
            let results = run_audit(&scenario, RunMode::AsDeclared, &table);
            render_report(&scenario, RunMode::AsDeclared, &results, ReportFormat::Machine)
        };
        let first = render();
        let second = render();
        assert_eq!(first, second, "{name}: machine report must be deterministic");
        assert!(first.ends_with('\n'));
        let body = first.trim_end_matches('\n');
        assert!(!body.contains('\n'), "{name}: machine report is one line");
        let v: serde_json::Value = serde_json::from_str(body).expect("machine report is JSON");
        assert_eq!(v["passed"], true);
        assert_eq!(v["scenario"], scenario.name.as_str());
        assert_eq!(v["counts"]["failed"], 0);
    }
}

#[test]
fn text_reports_carry_verdict_lines_and_citations() {
    let table = OdlyzkoTable::embedded();
    let scenario = load("j027.audit.json");
    let results = run_audit(&scenario, RunMode::AsDeclared, &table);
    let text = render_report(&scenario, RunMode::AsDeclared, &results, ReportFormat::Text);
    assert!(text.starts_with("SCENARIO "));
    for r in &results {
        assert!(
            text.contains(&format!("CHECK {} ", r.id)),
            "report must mention {}",
            r.id
        );
    }
    assert!(text.contains("RESULT PASS"));
    assert!(text.contains("Fontaine"));
    assert!(text.contains("Martinet"));
}

#[test]
fn ray_class_facts_cover_the_expected_conductors() {
    let expected: [(&str, &[(&str, &str)]); 4] = [
        (
            "j032.audit.json",
            &[
                ("E3", "pi2^(8)"),
                ("E3", "pi2^(1)*pi3^(5)"),
                ("E3", "pi3^(8)"),
            ],
        ),
        (
            "j027.audit.json",
            &[("M27", "p2b^(10)*p3b^(1)"), ("M27", "p2b^(1)*p3b^(6)")],
        ),
        ("j049.audit.json", &[("K7", "q7^(1)"), ("K7", "q2^(2)*q7^(1)")]),
        ("conductors.audit.json", &[]),
    ];
    for (name, want) in expected {
        let s = load(name);
        let mut got: Vec<(String, String)> = s
            .ray_class_fact_conductors()
            .into_iter()
            .map(|(base, rad)| (base, rad.to_string()))
            .collect();
        got.sort();
        let mut want: Vec<(String, String)> = want
            .iter()
            .map(|(b, r)| (b.to_string(), r.to_string()))
            .collect();
        want.sort();
        assert_eq!(got, want, "{name}: ray-class fact conductors");
    }
}

#[test]
fn malformed_scenarios_are_rejected_with_positions() {
    let s = r#"{"schema_version": 1, "name": "x",
        "fields": [{"name": "Q", "degree": 1, "disc": {}}],
        "checks": [
        {"id": "c1", "type": "conductor-exponent", "u": 1, "t": 0, "delta": "0", "g": 1,
         "expect": "2", "cite": "Ogg"}
    ]}"#;
    // valid baseline parses
    ramaudit::audit::load_scenario_str(s).expect("baseline scenario is valid");

    // unknown check type is rejected
    let bad = s.replace("conductor-exponent", "conductor-exponentt");
    let err = ramaudit::audit::load_scenario_str(&bad).unwrap_err().to_string();
    assert!(err.contains("conductor-exponentt"), "error names the bad tag: {err}");

    // duplicate check ids are rejected
    let v: serde_json::Value = serde_json::from_str(s).unwrap();
    let mut doubled = v.clone();
    let arr = doubled["checks"].as_array_mut().unwrap();
    let dup = arr[0].clone();
    arr.push(dup);
    let err = ramaudit::audit::load_scenario_value(&doubled).unwrap_err().to_string();
    assert!(err.contains("c1"), "duplicate id error mentions the id: {err}");
    assert!(err.contains("/checks/1/id"), "error carries the position: {err}");
}
