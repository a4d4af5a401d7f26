//! Declarative audit scenarios.
//!
//! A scenario is a JSON document that declares number fields with
//! exact discriminants, named prime ideals, ramification data
//! (filtration chains, tame growth, character conductors), external
//! facts quoted from the literature or from computer-algebra runs, and
//! a list of typed checks with expected outcomes. The runner evaluates
//! every check in exact arithmetic and reports `PASS`/`FAIL` per
//! check; declared facts are never recomputed — they are echoed into
//! the report as `fact-assumed` with their provenance, so the boundary
//! between derived and assumed inputs stays visible. Runs restricted
//! to unconditional discriminant bounds mark GRH-conditional checks as
//! `SKIP` rather than failing them.
//!
//! A run fails (exit code 1) exactly when some check fails; skipped
//! checks and assumed facts never fail a run. Malformed scenarios are
//! rejected up front with JSON-pointer positions (exit code 2 at the
//! CLI layer).

pub mod report;
pub mod run;
pub mod schema;

pub use report::{exit_code, render_report, ReportFormat};
pub use run::{run_audit, run_audit_with, run_passed, CheckResult, RunMode, Verdict};
pub use schema::{
    load_scenario, load_scenario_str, load_scenario_value, AuditScenario, Check, CheckParams,
    FactDecl, FactKind, FieldDecl, LabelDecl, Step, SCHEMA_VERSION,
};
