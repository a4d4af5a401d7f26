//! Report rendering: a line-oriented text format for reading and a
//! byte-stable compact JSON format for tooling, plus the process exit
//! convention (0 = all checks hold, 1 = at least one failed).

use serde::Serialize;

use crate::audit::run::{run_passed, CheckResult, RunMode, Verdict};
use crate::audit::schema::{AuditScenario, SCHEMA_VERSION};
use crate::{Error, Result};

/// Output format of a rendered report.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    /// `SCENARIO` / `CHECK` / `RESULT` lines with indented detail.
    Text,
    /// Compact JSON with a fixed key order; byte-stable across runs.
    Machine,
}

impl ReportFormat {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "text" => Ok(ReportFormat::Text),
            "machine" => Ok(ReportFormat::Machine),
            other => Err(Error::Invalid(format!(
                "unknown report format `{other}` (expected `text` or `machine`)"
            ))),
        }
    }
}

#[derive(Debug, Default, Serialize)]
struct Counts {
    checks: usize,
    passed: usize,
    failed: usize,
    skipped: usize,
    facts: usize,
}

fn tally(results: &[CheckResult]) -> Counts {
    let mut c = Counts::default();
    for r in results {
        match r.verdict {
            Verdict::Pass => {
                c.checks += 1;
                c.passed += 1;
            }
            Verdict::Fail => {
                c.checks += 1;
                c.failed += 1;
            }
            Verdict::Skipped => {
                c.checks += 1;
                c.skipped += 1;
            }
            Verdict::FactAssumed => c.facts += 1,
        }
    }
    c
}

#[derive(Serialize)]
struct MachineResult<'a> {
    id: &'a str,
    kind: &'a str,
    verdict: &'a str,
    computed: &'a str,
    bound: &'a str,
    cite: &'a str,
    details: &'a [String],
}

#[derive(Serialize)]
struct MachineReport<'a> {
    schema_version: u32,
    scenario: &'a str,
    mode: &'a str,
    passed: bool,
    counts: Counts,
    results: Vec<MachineResult<'a>>,
}

/// Renders the outcome of a run. The machine format is deterministic
/// byte-for-byte for a fixed scenario, mode and result list.
pub fn render_report(
    scenario: &AuditScenario,
    mode: RunMode,
    results: &[CheckResult],
    format: ReportFormat,
) -> String {
    match format {
        ReportFormat::Text => render_text(scenario, mode, results),
        ReportFormat::Machine => render_machine(scenario, mode, results),
    }
}

fn render_text(scenario: &AuditScenario, mode: RunMode, results: &[CheckResult]) -> String {
    let counts = tally(results);
    let mut out = String::new();
    out.push_str(&format!(
        "SCENARIO {} mode={} checks={} facts={}\n",
        scenario.name,
        mode.as_str(),
        counts.checks,
        counts.facts
    ));
    if !scenario.description.is_empty() {
        out.push_str(&format!("# {}\n", scenario.description));
    }
    for r in results {
        out.push_str(&format!(
            "CHECK {} {} [{}] computed={} bound={} cite={}\n",
            r.id,
            r.verdict.as_str(),
            r.kind,
            r.computed,
            r.bound,
            r.cite
        ));
        for d in &r.details {
            out.push_str(&format!("  - {d}\n"));
        }
    }
    out.push_str(&format!(
        "RESULT {} checks={} passed={} failed={} skipped={} facts={}\n",
        if run_passed(results) { "PASS" } else { "FAIL" },
        counts.checks,
        counts.passed,
        counts.failed,
        counts.skipped,
        counts.facts
    ));
    out
}

fn render_machine(scenario: &AuditScenario, mode: RunMode, results: &[CheckResult]) -> String {
    let report = MachineReport {
        schema_version: SCHEMA_VERSION,
        scenario: &scenario.name,
        mode: mode.as_str(),
        passed: run_passed(results),
        counts: tally(results),
        results: results
            .iter()
            .map(|r| MachineResult {
                id: &r.id,
                kind: &r.kind,
                verdict: r.verdict.as_str(),
                computed: &r.computed,
                bound: &r.bound,
                cite: &r.cite,
                details: &r.details,
            })
            .collect(),
    };
    let mut text = serde_json::to_string(&report).expect("report serialization cannot fail");
    text.push('\n');
    text
}

/// Process exit code for a finished run: 0 when nothing failed, 1
/// otherwise. (Usage and schema errors exit 2 at the CLI layer.)
pub fn exit_code(results: &[CheckResult]) -> i32 {
    if run_passed(results) {
        0
    } else {
        1
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::audit::run::{run_audit_with, RunMode};
    use crate::audit::schema::load_scenario_str;
    use crate::bounds::OdlyzkoTable;

    fn tiny() -> AuditScenario {
        load_scenario_str(
            r#"{
  "schema_version": 1,
  "name": "tiny",
  "description": "smoke scenario",
  "fields": [{"name": "Q", "degree": 1, "disc": {}}],
  "steps": [],
  "checks": [
    {"id": "c1", "type": "mestre", "cases": [{"n": 27, "g": 1, "expect": true}],
     "cite": "Mestre's conductor bound"},
    {"id": "c2", "type": "wild-level-bound", "delta": "1", "min_codim": 2,
     "expect": "1/2", "cite": "orbit codimension"}
  ]
}"#,
        )
        .unwrap()
    }

    #[test]
    fn text_report_has_scenario_check_and_result_lines() {
        let s = tiny();
        let table = OdlyzkoTable::embedded();
        let results = run_audit_with(&s, RunMode::AsDeclared, &table, false);
        let text = render_report(&s, RunMode::AsDeclared, &results, ReportFormat::Text);
        assert!(text.starts_with("SCENARIO tiny mode=as-declared checks=2 facts=0\n"));
        assert!(text.contains("CHECK c1 PASS [mestre]"));
        assert!(text.contains("CHECK c2 PASS [wild-level-bound] computed=1/2 bound=1/2"));
        assert!(text.trim_end().ends_with("RESULT PASS checks=2 passed=2 failed=0 skipped=0 facts=0"));
    }

    #[test]
    fn machine_report_is_byte_stable_and_parses() {
        let s = tiny();
        let table = OdlyzkoTable::embedded();
        let r1 = run_audit_with(&s, RunMode::AsDeclared, &table, true);
        let r2 = run_audit_with(&s, RunMode::AsDeclared, &table, false);
        let m1 = render_report(&s, RunMode::AsDeclared, &r1, ReportFormat::Machine);
        let m2 = render_report(&s, RunMode::AsDeclared, &r2, ReportFormat::Machine);
        assert_eq!(m1, m2);
        let v: serde_json::Value = serde_json::from_str(&m1).unwrap();
        assert_eq!(v["schema_version"], 1);
        assert_eq!(v["passed"], true);
        assert_eq!(v["results"][0]["id"], "c1");
        assert_eq!(exit_code(&r1), 0);
    }

    #[test]
    fn failures_flip_the_exit_code() {
        let s = load_scenario_str(
            r#"{
  "schema_version": 1,
  "name": "failing",
  "fields": [{"name": "Q", "degree": 1, "disc": {}}],
  "checks": [
    {"id": "c1", "type": "mestre", "cases": [{"n": 27, "g": 2, "expect": true}],
     "cite": "Mestre's conductor bound"}
  ]
}"#,
        )
        .unwrap();
        let table = OdlyzkoTable::embedded();
        let results = run_audit_with(&s, RunMode::AsDeclared, &table, false);
        assert_eq!(exit_code(&results), 1);
        let text = render_report(&s, RunMode::AsDeclared, &results, ReportFormat::Text);
        assert!(text.contains("CHECK c1 FAIL"));
        assert!(text.contains("RESULT FAIL"));
    }
}
