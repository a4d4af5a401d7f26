//! Scenario runner: evaluates every declared check in exact arithmetic
//! and emits one verdict per check. Declared external facts are never
//! recomputed; they are echoed into the result list with provenance so
//! a reader can see exactly which inputs were assumed rather than
//! derived.

use crate::audit::schema::{
    AuditScenario, Check, CheckParams, FactDecl, FiltrationStep, RcfRoute, Step,
};
use crate::bounds::{self, BoundMode, CharacterConductor, DegreeCap, OdlyzkoTable};
use crate::conductor::{self, CaseConstraints, ReductionData};
use crate::exact::{
    exceeds_at, normalize_ideal_labels, radical_approx, radical_mul, radical_pow, rat, rat_int,
    rational_str, FactoredRadical, PrimeLabel, Rational,
};
use crate::filtration::{artin_exponent, different_valuation, discriminant_valuation, u_max};
use crate::modrep::{fixed_space_dim, group_preset, solvable_subgroup_caps};
use crate::{Error, Result};

/// How conditional bounds are treated during a run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RunMode {
    /// Evaluate every check with the bound mode it declares.
    AsDeclared,
    /// Skip checks that rest on GRH-conditional discriminant bounds;
    /// they are reported as skipped, not failed.
    UnconditionalOnly,
}

impl RunMode {
    pub fn as_str(&self) -> &'static str {
        match self {
            RunMode::AsDeclared => "as-declared",
            RunMode::UnconditionalOnly => "unconditional-only",
        }
    }
}

/// Outcome of a single check or declared fact.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
    /// A declared external input, echoed with provenance.
    FactAssumed,
    /// Not evaluated under the requested run mode.
    Skipped,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::FactAssumed => "fact-assumed",
            Verdict::Skipped => "SKIP",
        }
    }
}

/// One line of the final report.
#[derive(Debug, Clone)]
pub struct CheckResult {
    pub id: String,
    /// Check type name, or the fact kind for assumed facts.
    pub kind: String,
    pub verdict: Verdict,
    /// Principal computed quantity, rendered exactly.
    pub computed: String,
    /// Principal expected quantity or bound.
    pub bound: String,
    pub cite: String,
    /// One line per individual comparison.
    pub details: Vec<String>,
}

/// Runs every check; parallelises across checks when the `parallel`
/// feature is enabled.
pub fn run_audit(
    scenario: &AuditScenario,
    mode: RunMode,
    table: &OdlyzkoTable,
) -> Vec<CheckResult> {
    run_audit_with(scenario, mode, table, cfg!(feature = "parallel"))
}

/// [`run_audit`] with an explicit parallel/sequential switch.
pub fn run_audit_with(
    scenario: &AuditScenario,
    mode: RunMode,
    table: &OdlyzkoTable,
    parallel: bool,
) -> Vec<CheckResult> {
    let checks: Vec<Check> = scenario.checks.clone();
    let mut results = crate::par::map_collect(checks, parallel, |check| {
        evaluate(scenario, &check, mode, table)
    });
    for fact in &scenario.facts {
        results.push(fact_result(fact));
    }
    results.sort_by(|a, b| a.id.cmp(&b.id));
    results
}

/// A run passes when nothing failed; skipped checks and assumed facts
/// do not fail a run.
pub fn run_passed(results: &[CheckResult]) -> bool {
    results.iter().all(|r| r.verdict != Verdict::Fail)
}

fn fact_result(fact: &FactDecl) -> CheckResult {
    let mut details = Vec::new();
    if let Some(base) = &fact.base {
        details.push(format!("over: {base}"));
    }
    if let Some(c) = &fact.conductor {
        details.push(format!("conductor: {c}"));
    }
    if let Some(d) = fact.degree {
        details.push(format!("degree: {d}"));
    }
    CheckResult {
        id: fact.id.clone(),
        kind: fact.kind.as_str().to_string(),
        verdict: Verdict::FactAssumed,
        computed: fact.payload.clone(),
        bound: "assumed, not derived".into(),
        cite: fact.provenance.clone(),
        details,
    }
}

fn evaluate(
    scenario: &AuditScenario,
    check: &Check,
    mode: RunMode,
    table: &OdlyzkoTable,
) -> CheckResult {
    let kind = check.params.type_name().to_string();
    if mode == RunMode::UnconditionalOnly && check.params.bound_mode() == Some(BoundMode::Grh) {
        return CheckResult {
            id: check.id.clone(),
            kind,
            verdict: Verdict::Skipped,
            computed: "-".into(),
            bound: "-".into(),
            cite: check.cite.clone(),
            details: vec!["GRH-conditional bound; skipped in unconditional-only runs".into()],
        };
    }
    let mut out = Outcome::default();
    let verdict = match eval_params(scenario, &check.params, table, &mut out) {
        Ok(()) => {
            if out.ok {
                Verdict::Pass
            } else {
                Verdict::Fail
            }
        }
        Err(e) => {
            out.computed = format!("error: {e}");
            Verdict::Fail
        }
    };
    let mut details = out.details;
    details.extend(check.notes.iter().map(|n| format!("note: {n}")));
    CheckResult {
        id: check.id.clone(),
        kind,
        verdict,
        computed: out.computed,
        bound: out.bound,
        cite: check.cite.clone(),
        details,
    }
}

/// Accumulates individual comparisons of one check.
#[derive(Debug, Default)]
struct Outcome {
    computed: String,
    bound: String,
    details: Vec<String>,
    ok_initialized: bool,
    ok: bool,
}

impl Outcome {
    fn set_main(&mut self, computed: impl Into<String>, bound: impl Into<String>) {
        self.computed = computed.into();
        self.bound = bound.into();
        if !self.ok_initialized {
            self.ok_initialized = true;
            self.ok = true;
        }
    }

    fn compare<T: PartialEq + std::fmt::Display>(&mut self, name: &str, got: T, want: T) {
        let ok = got == want;
        self.record(name, format!("{got} (expected {want})"), ok);
    }

    fn require(&mut self, name: &str, shown: impl Into<String>, ok: bool) {
        self.record(name, shown.into(), ok);
    }

    fn record(&mut self, name: &str, shown: String, ok: bool) {
        if !self.ok_initialized {
            self.ok_initialized = true;
            self.ok = true;
        }
        if !ok {
            self.ok = false;
        }
        self.details
            .push(format!("{name}: {shown} [{}]", if ok { "ok" } else { "MISMATCH" }));
    }
}

fn field<'a>(s: &'a AuditScenario, name: &str) -> Result<&'a crate::audit::schema::FieldDecl> {
    s.field(name)
        .ok_or_else(|| Error::Invalid(format!("unknown field `{name}`")))
}

fn filtration_step<'a>(s: &'a AuditScenario, id: &str) -> Result<&'a FiltrationStep> {
    match s.step(id) {
        Some(Step::Filtration(f)) => Ok(f),
        _ => Err(Error::Invalid(format!("`{id}` is not a filtration step"))),
    }
}

fn cap_str(cap: DegreeCap) -> String {
    match cap {
        DegreeCap::Capped(n) => n.to_string(),
        DegreeCap::UnboundedByTable => "unbounded".into(),
    }
}

fn check_cap(
    out: &mut Outcome,
    table: &OdlyzkoTable,
    delta: &FactoredRadical,
    mode: BoundMode,
    expect_cap: u32,
    excludes: Option<u32>,
    allows: Option<u32>,
) -> Result<()> {
    let cap = table.max_degree(delta, mode)?;
    out.compare(&format!("degree cap ({mode})"), cap_str(cap), expect_cap.to_string());
    if let DegreeCap::Capped(n) = cap {
        if let Some(d) = excludes {
            out.require(
                "excluded degree",
                format!("{d} ≥ cap {n}"),
                d >= n,
            );
        }
        if let Some(d) = allows {
            out.require("allowed degree", format!("{d} < cap {n}"), d < n);
        }
    }
    Ok(())
}

fn approx_of(radical: &FactoredRadical) -> Result<String> {
    Ok(radical_approx(&normalize_ideal_labels(radical)?, 3)?.display)
}

fn check_radical(
    out: &mut Outcome,
    name: &str,
    got: &FactoredRadical,
    want: &FactoredRadical,
    expect_approx: Option<&str>,
) -> Result<()> {
    out.compare(name, got.to_string(), want.to_string());
    if let Some(want_approx) = expect_approx {
        out.compare("decimal rendering", approx_of(got)?, want_approx.to_string());
    }
    Ok(())
}

fn eval_params(
    s: &AuditScenario,
    params: &CheckParams,
    table: &OdlyzkoTable,
    out: &mut Outcome,
) -> Result<()> {
    match params {
        CheckParams::FontaineBound {
            base,
            p,
            level,
            ell,
            expect_radical,
            expect_approx,
        } => {
            let base = field(s, base)?;
            let bound = bounds::fontaine_bound(&base.root_disc, *p, level, *ell)?;
            out.set_main(bound.value().to_string(), expect_radical.to_string());
            check_radical(out, "strict bound", bound.value(), expect_radical, expect_approx.as_deref())?;
        }
        CheckParams::OdlyzkoCap {
            delta,
            mode,
            expect_cap,
            excludes,
            allows,
        } => {
            out.set_main(
                format!("δ = {delta} ≈ {}", approx_of(delta)?),
                format!("cap {expect_cap}"),
            );
            check_cap(out, table, delta, *mode, *expect_cap, *excludes, *allows)?;
        }
        CheckParams::RamificationCap {
            base,
            torsion,
            tame,
            expect_radical,
            expect_approx,
            mode,
            expect_cap,
            excludes,
        } => {
            let base = field(s, base)?;
            let mut radical = base.root_disc.clone();
            if let Some((ell, n)) = torsion {
                if *ell < 2 || *n == 0 {
                    return Err(Error::Domain(
                        "torsion part needs a prime ℓ and positive exponent".into(),
                    ));
                }
                let e = rat_int(*n as i64) + rat(1, (*ell - 1) as i64);
                radical = radical_mul(&radical, &FactoredRadical::from_prime_powers(&[(*ell, e)])?)?;
            }
            for (p, e) in tame {
                if *e == 0 {
                    return Err(Error::Domain("tame degree must be positive".into()));
                }
                let exp = rat((*e - 1) as i64, *e as i64);
                radical = radical_mul(&radical, &FactoredRadical::from_prime_powers(&[(*p, exp)])?)?;
            }
            out.set_main(radical.to_string(), expect_radical.to_string());
            check_radical(out, "root-discriminant bound", &radical, expect_radical, expect_approx.as_deref())?;
            if let (Some(mode), Some(cap)) = (mode, expect_cap) {
                check_cap(out, table, &radical, *mode, *cap, *excludes, None)?;
            }
        }
        CheckParams::FiltrationLevel {
            step,
            expect_level,
            expect_disc_valuation,
        } => {
            let st = filtration_step(s, step)?;
            let u = u_max(&st.filtration)?;
            out.set_main(rational_str(&u), rational_str(expect_level));
            out.compare("level u_max", rational_str(&u), rational_str(expect_level));
            if let Some(expect_disc) = expect_disc_valuation {
                let disc = discriminant_valuation(&st.filtration, st.residue_degree)?;
                out.compare(
                    "discriminant valuation",
                    rational_str(&disc),
                    rational_str(expect_disc),
                );
                // Cross-check against the declared field discriminant.
                // The chain accounts for one prime above p, so this
                // comparison presumes a single prime there (true for
                // every chain this check is asked to audit).
                let declared = field(s, &st.field)?.disc.exponent_of_prime(st.p);
                out.compare(
                    &format!("declared v_{}(Δ)", st.p),
                    rational_str(&declared),
                    rational_str(expect_disc),
                );
            }
        }
        CheckParams::DifferentValuation { step, expect } => {
            let st = filtration_step(s, step)?;
            let d = different_valuation(&st.filtration)?;
            out.set_main(rational_str(&d), rational_str(expect));
            out.compare(
                "different valuation (both routes)",
                rational_str(&d),
                rational_str(expect),
            );
        }
        CheckParams::TameExtensionBound {
            step,
            expect_radical,
            mode,
            expect_cap,
            expect_degree_ratio,
        } => {
            let st = match s.step(step) {
                Some(Step::Tame(t)) => t,
                _ => return Err(Error::Invalid(format!("`{step}` is not a tame step"))),
            };
            let base = field(s, &st.base)?;
            let mut radical = base.root_disc.clone();
            for tp in &st.primes {
                let inc = bounds::tame_root_disc_increment(tp.f, tp.g, base.degree, tp.e)?;
                radical = radical_mul(&radical, &FactoredRadical::from_prime_powers(&[(tp.p, inc)])?)?;
            }
            out.set_main(radical.to_string(), expect_radical.to_string());
            check_radical(out, "tame growth bound", &radical, expect_radical, None)?;
            let cap = table.max_degree(&radical, *mode)?;
            out.compare(&format!("degree cap ({mode})"), cap_str(cap), expect_cap.to_string());
            if let Some(ratio) = expect_degree_ratio {
                if let DegreeCap::Capped(n) = cap {
                    let got = rat_int(n as i64) / rat_int(base.degree as i64);
                    out.compare("relative degree bound", rational_str(&got), rational_str(ratio));
                } else {
                    out.require("relative degree bound", "cap unbounded", false);
                }
            }
        }
        CheckParams::ConductorDiscriminant {
            step,
            expect_rel_disc,
            expect_delta,
            matches_field,
            exceeds,
        } => {
            let st = match s.step(step) {
                Some(Step::Characters(c)) => c,
                _ => return Err(Error::Invalid(format!("`{step}` is not a characters step"))),
            };
            let base = field(s, &st.base)?;
            let top = field(s, &st.top)?;
            if top.degree % base.degree != 0 {
                return Err(Error::Invalid(format!(
                    "degree of `{}` must divide degree of `{}`",
                    st.base, st.top
                )));
            }
            let chars: Vec<CharacterConductor> = st.characters.clone();
            let count = bounds::character_count(&chars);
            out.compare("character count", count, top.degree / base.degree);
            let rel = bounds::conductor_discriminant(&chars)?;
            if let Some(want) = expect_rel_disc {
                out.compare("relative discriminant", rel.to_string(), want.to_string());
            }
            let norm = normalize_ideal_labels(&rel)?;
            let delta = bounds::extend_root_disc(&base.root_disc, &norm, top.degree)?;
            out.set_main(delta.to_string(), expect_delta.to_string());
            out.compare("root discriminant", delta.to_string(), expect_delta.to_string());
            if let Some(name) = matches_field {
                let declared = &field(s, name)?.root_disc;
                out.compare(
                    &format!("declared root discriminant of {name}"),
                    delta.to_string(),
                    declared.to_string(),
                );
            }
            if let Some(ex) = exceeds {
                let at = exceeds_at(&delta, &ex.ambient)?;
                out.compare(
                    &format!("exceeds ambient bound {} at", ex.ambient),
                    format!("{at:?}"),
                    format!("{:?}", ex.at),
                );
            }
        }
        CheckParams::RcfViolations { cases } => {
            out.set_main(format!("{} cases", cases.len()), "each matches expectation");
            for case in cases {
                let value = match &case.route {
                    RcfRoute::RootDisc {
                        base,
                        conductor,
                        degree,
                        at,
                    } => {
                        let base = field(s, base)?;
                        // Relative discriminant of a degree-p cyclic
                        // subextension of the ray class field of
                        // conductor c: every nontrivial character has
                        // conductor c, so Δ = c^{p-1}.
                        let rel = radical_pow(conductor, *degree as i64 - 1)?;
                        let norm = normalize_ideal_labels(&rel)?;
                        base.disc.exponent_of_prime(*at) / rat_int(base.degree as i64)
                            + norm.exponent_of_prime(*at)
                                / rat_int((degree * base.degree) as i64)
                    }
                    RcfRoute::Level { filtration } => u_max(filtration)?,
                };
                out.compare(
                    &format!("case {}: value", case.id),
                    rational_str(&value),
                    rational_str(&case.expect_value),
                );
                let violated = if case.strict {
                    value >= case.bound
                } else {
                    value > case.bound
                };
                let rel = if case.strict { "≥" } else { ">" };
                out.require(
                    &format!("case {}: violation", case.id),
                    format!(
                        "{} {rel} {} is {violated} (expected {})",
                        rational_str(&value),
                        rational_str(&case.bound),
                        case.expect_violation
                    ),
                    violated == case.expect_violation,
                );
            }
        }
        CheckParams::FontaineLocalCap {
            ell,
            n,
            e,
            expect_cap,
            level_of_step,
        } => {
            let cap = bounds::fontaine_local_cap(*ell, *n, *e)?;
            out.set_main(rational_str(&cap), rational_str(expect_cap));
            out.compare("level cap", rational_str(&cap), rational_str(expect_cap));
            if let Some(step) = level_of_step {
                let st = filtration_step(s, step)?;
                let u = u_max(&st.filtration)?;
                out.require(
                    &format!("chain `{step}` within cap"),
                    format!("u_max = {} ≤ {}", rational_str(&u), rational_str(&cap)),
                    u <= cap,
                );
            }
        }
        CheckParams::GroupCaps {
            preset,
            expect_solvable,
            expect_cyclic_normal,
        } => {
            let g = group_preset(preset)?;
            let (solvable, cyclic) = solvable_subgroup_caps(&g);
            out.set_main(
                format!("solvable ≤ {solvable}, cyclic-normal ≤ {cyclic}"),
                format!("solvable ≤ {expect_solvable}, cyclic-normal ≤ {expect_cyclic_normal}"),
            );
            out.compare("largest solvable subgroup", solvable as u64, *expect_solvable);
            out.compare(
                "largest cyclic normal-in-solvable subgroup",
                cyclic as u64,
                *expect_cyclic_normal,
            );
        }
        CheckParams::GroupNormalPresence { cases } => {
            out.set_main(format!("{} cases", cases.len()), "enumerated normal subgroups");
            for case in cases {
                let g = group_preset(&case.preset)?;
                let present = g.has_normal_subgroup_of_order(case.order as u32);
                out.compare(
                    &format!("{}: normal subgroup of order {}", case.preset, case.order),
                    present,
                    case.expect_present,
                );
            }
        }
        CheckParams::ArtinCap {
            ell,
            n,
            e,
            expect_level_cap,
            expect_artin_cap,
        } => {
            let level_cap = bounds::fontaine_local_cap(*ell, *n, *e)?;
            let artin_cap = &level_cap + rat_int(1);
            out.set_main(rational_str(&artin_cap), rational_str(expect_artin_cap));
            out.compare("level cap", rational_str(&level_cap), rational_str(expect_level_cap));
            out.compare(
                "character conductor-exponent cap (u+1)",
                rational_str(&artin_cap),
                rational_str(expect_artin_cap),
            );
        }
        CheckParams::ArtinExponent {
            filtration,
            profile,
            expect,
            cap,
            expect_exceeds_cap,
        } => {
            let a = artin_exponent(filtration, profile)?;
            out.set_main(rational_str(&a), rational_str(expect));
            out.compare("conductor exponent", rational_str(&a), rational_str(expect));
            if let Some(cap) = cap {
                let exceeds = &a > cap;
                let want = expect_exceeds_cap.unwrap_or(true);
                out.require(
                    "cap comparison",
                    format!("{} > {} is {exceeds} (expected {want})", rational_str(&a), rational_str(cap)),
                    exceeds == want,
                );
            }
        }
        CheckParams::InertiaDiscBound {
            base,
            relative_degree,
            inertia_order,
            labels,
            characters,
            expect_rel_valuation,
            expect_delta,
            mode,
            expect_cap,
            excludes,
        } => {
            let base = field(s, base)?;
            let blocks = relative_degree / inertia_order;
            // Sum of conductor exponents over the inertia characters of
            // one block; each of the `blocks` primes above contributes
            // the same amount.
            let mut per_block = rat_int(0);
            for c in characters {
                per_block += &c.exponent * rat_int(c.multiplicity as i64);
            }
            let v = rat_int(blocks as i64) * per_block;
            out.compare(
                "relative discriminant valuation per prime",
                rational_str(&v),
                rational_str(expect_rel_valuation),
            );
            let mut rel = FactoredRadical::one();
            for name in labels {
                let decl = s
                    .labels
                    .get(name)
                    .ok_or_else(|| Error::Invalid(format!("unregistered label `{name}`")))?;
                let label = PrimeLabel::ideal(name, decl.p, decl.f)?;
                rel = radical_mul(&rel, &FactoredRadical::new(vec![(label, v.clone())])?)?;
            }
            let norm = normalize_ideal_labels(&rel)?;
            let delta = bounds::extend_root_disc(
                &base.root_disc,
                &norm,
                base.degree * relative_degree,
            )?;
            out.set_main(delta.to_string(), expect_delta.to_string());
            out.compare("root discriminant", delta.to_string(), expect_delta.to_string());
            check_cap(out, table, &delta, *mode, *expect_cap, *excludes, None)?;
        }
        CheckParams::ConductorCases {
            c,
            g,
            require_u_positive,
            require_delta_zero,
            expect_cases,
        } => {
            let constraints = CaseConstraints {
                require_u_positive: *require_u_positive,
                require_delta_zero: *require_delta_zero,
            };
            let got = conductor::enumerate_cases(*c, *g, &constraints)?;
            let mut got_t: Vec<(u32, u32, Rational)> =
                got.iter().map(|r| (r.u, r.t, r.delta.clone())).collect();
            let mut want_t: Vec<(u32, u32, Rational)> = expect_cases
                .iter()
                .map(|&(u, t, d)| (u, t, rat_int(d as i64)))
                .collect();
            got_t.sort();
            want_t.sort();
            let shown: Vec<String> = got.iter().map(conductor::case_label).collect();
            out.set_main(
                shown.join(", "),
                format!("{} admissible cases", expect_cases.len()),
            );
            out.compare("case count", got_t.len(), want_t.len());
            out.require(
                "case list",
                shown.join(", "),
                got_t == want_t,
            );
        }
        CheckParams::ConductorExponent { u, t, delta, g, expect } => {
            let r = ReductionData::new(*u, *t, delta.clone(), *g)?;
            let c = r.conductor_exponent();
            out.set_main(rational_str(&c), rational_str(expect));
            out.compare(
                &format!("conductor exponent of {}", conductor::case_label(&r)),
                rational_str(&c),
                rational_str(expect),
            );
        }
        CheckParams::WildLevelBound {
            delta,
            min_codim,
            expect,
        } => {
            let b = conductor::wild_mass_level_bound(delta, *min_codim)?;
            out.set_main(rational_str(&b), rational_str(expect));
            out.compare("level bound", rational_str(&b), rational_str(expect));
        }
        CheckParams::SerreDelta {
            filtration,
            profile,
            expect,
        } => {
            let d = conductor::serre_delta(filtration, profile)?;
            out.set_main(rational_str(&d), rational_str(expect));
            out.compare("wild mass δ", rational_str(&d), rational_str(expect));
        }
        CheckParams::OrbitFixedDim {
            generators,
            expect_fixed_dim,
        } => {
            let report = fixed_space_dim(generators)?;
            out.set_main(report.fixed_dim.to_string(), expect_fixed_dim.to_string());
            out.compare("fixed-space dimension", report.fixed_dim as u32, *expect_fixed_dim);
            out.require(
                "orbit congruence (dim even)",
                format!("dim V^G = {}", report.fixed_dim),
                report.fixed_dim % 2 == 0,
            );
            if !report.trivial_action {
                out.require(
                    "proper fixed space",
                    format!("{} < {}", report.fixed_dim, report.ambient_dim),
                    report.fixed_dim < report.ambient_dim,
                );
            }
        }
        CheckParams::Mestre { cases } => {
            out.set_main(format!("{} cases", cases.len()), "conductor vs 10^g");
            for case in cases {
                let got = conductor::mestre_check(case.n, case.g);
                out.compare(
                    &format!("{} > 10^{}", case.n, case.g),
                    got,
                    case.expect,
                );
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::audit::schema::load_scenario_str;

    fn scenario(checks: &str) -> AuditScenario {
        let text = format!(
            r#"{{
  "schema_version": 1,
  "name": "t",
  "labels": {{"pi2": {{"p": 2, "f": 2}}, "pi3": {{"p": 3, "f": 2}}}},
  "fields": [
    {{"name": "Q", "degree": 1, "disc": {{}}}},
    {{"name": "F", "degree": 16, "disc": {{"2": "32", "3": "14"}}}}
  ],
  "steps": [
    {{"kind": "filtration", "id": "s1", "field": "F", "p": 2,
      "orders": [8, 4, 4, 4], "residue_degree": 2}},
    {{"kind": "characters", "id": "s2", "base": "Q", "top": "Q",
      "characters": [{{"conductor": {{}}, "multiplicity": 1}}]}}
  ],
  "checks": [{checks}]
}}"#
        );
        load_scenario_str(&text).unwrap()
    }

    fn run_one(checks: &str) -> CheckResult {
        let s = scenario(checks);
        let table = OdlyzkoTable::embedded();
        let mut results = run_audit(&s, RunMode::AsDeclared, &table);
        assert_eq!(results.len(), 1);
        results.remove(0)
    }

    #[test]
    fn filtration_level_check_passes_on_matching_data() {
        let r = run_one(
            r#"{"id": "c1", "type": "filtration-level", "step": "s1",
                "expect_level": "3/2", "expect_disc_valuation": "32",
                "cite": "chain arithmetic"}"#,
        );
        assert_eq!(r.verdict, Verdict::Pass, "details: {:?}", r.details);
        assert_eq!(r.computed, "3/2");
    }

    #[test]
    fn filtration_level_check_fails_on_wrong_expectation() {
        let r = run_one(
            r#"{"id": "c1", "type": "filtration-level", "step": "s1",
                "expect_level": "2", "cite": "chain arithmetic"}"#,
        );
        assert_eq!(r.verdict, Verdict::Fail);
    }

    #[test]
    fn fontaine_bound_check_matches_oracle() {
        let r = run_one(
            r#"{"id": "c1", "type": "fontaine-bound", "base": "Q",
                "p": 2, "level": "3/2", "ell": 3,
                "expect_radical": {"2": "5/2", "3": "3/2"},
                "expect_approx": "29.394",
                "cite": "Fontaine's ramification bound"}"#,
        );
        assert_eq!(r.verdict, Verdict::Pass, "details: {:?}", r.details);
    }

    #[test]
    fn grh_checks_are_skipped_in_unconditional_mode() {
        let s = scenario(
            r#"{"id": "c1", "type": "odlyzko-cap", "delta": {"2": "2"},
                "mode": "grh", "expect_cap": 8,
                "cite": "discriminant bound tables"}"#,
        );
        let table = OdlyzkoTable::embedded();
        let run = run_audit(&s, RunMode::UnconditionalOnly, &table);
        assert_eq!(run[0].verdict, Verdict::Skipped);
        assert!(run_passed(&run));
        let run = run_audit(&s, RunMode::AsDeclared, &table);
        assert_eq!(run[0].verdict, Verdict::Pass, "details: {:?}", run[0].details);
    }

    #[test]
    fn facts_are_echoed_not_computed() {
        let text = r#"{
  "schema_version": 1,
  "name": "t",
  "labels": {"pi2": {"p": 2, "f": 2}},
  "fields": [{"name": "F", "degree": 16, "disc": {"2": "32", "3": "14"}}],
  "steps": [
    {"kind": "fact", "id": "f1", "fact": "ray-class-degree", "base": "F",
     "conductor": {"pi2": "8"}, "degree": 4,
     "payload": "ray class field of conductor pi2^8 has degree 4",
     "provenance": "computer algebra class-field computation"}
  ],
  "checks": [
    {"id": "c1", "type": "mestre", "cases": [{"n": 27, "g": 1, "expect": true}],
     "cite": "Mestre's conductor bound"}
  ]
}"#;
        let s = load_scenario_str(text).unwrap();
        let table = OdlyzkoTable::embedded();
        let run = run_audit(&s, RunMode::AsDeclared, &table);
        assert_eq!(run.len(), 2);
        assert_eq!(run[0].id, "c1");
        assert_eq!(run[1].verdict, Verdict::FactAssumed);
        assert!(run[1].cite.contains("class-field"));
        assert!(run_passed(&run));
    }

    #[test]
    fn internal_errors_surface_as_failures() {
        // 2-adic torsion with ℓ = p makes the bound inapplicable.
        let r = run_one(
            r#"{"id": "c1", "type": "fontaine-bound", "base": "Q",
                "p": 2, "level": "1", "ell": 2,
                "expect_radical": {"2": "2"},
                "cite": "Fontaine's ramification bound"}"#,
        );
        assert_eq!(r.verdict, Verdict::Fail);
        assert!(r.computed.starts_with("error:"), "computed: {}", r.computed);
    }

    #[test]
    fn rcf_violation_strictness_is_honoured() {
        // Value equal to the bound: violation iff the bound is strict.
        let strict = run_one(
            r#"{"id": "c1", "type": "rcf-violations", "cases": [
                 {"id": "a", "route": "root-disc", "base": "F",
                  "conductor": {"pi2": "8"}, "degree": 2, "at": 2,
                  "bound": "5/2", "expect_value": "5/2"}],
                "cite": "class field theory"}"#,
        );
        assert_eq!(strict.verdict, Verdict::Pass, "details: {:?}", strict.details);
        let nonstrict = run_one(
            r#"{"id": "c1", "type": "rcf-violations", "cases": [
                 {"id": "a", "route": "root-disc", "base": "F",
                  "conductor": {"pi2": "8"}, "degree": 2, "at": 2,
                  "bound": "5/2", "strict": false, "expect_value": "5/2",
                  "expect_violation": false}],
                "cite": "class field theory"}"#,
        );
        assert_eq!(nonstrict.verdict, Verdict::Pass, "details: {:?}", nonstrict.details);
    }

    #[test]
    fn results_are_sorted_and_deterministic() {
        let s = scenario(
            r#"{"id": "c2", "type": "mestre", "cases": [{"n": 27, "g": 1, "expect": true}], "cite": "x"},
               {"id": "c1", "type": "wild-level-bound", "delta": "1", "min_codim": 2,
                "expect": "1/2", "cite": "orbit codimension"}"#,
        );
        let table = OdlyzkoTable::embedded();
        let a = run_audit_with(&s, RunMode::AsDeclared, &table, true);
        let b = run_audit_with(&s, RunMode::AsDeclared, &table, false);
        assert_eq!(a.len(), 2);
        assert_eq!(a[0].id, "c1");
        assert_eq!(a[1].id, "c2");
        let fmt = |v: &[CheckResult]| -> Vec<String> {
            v.iter()
                .map(|r| format!("{} {} {} {}", r.id, r.verdict.as_str(), r.computed, r.bound))
                .collect()
        };
        assert_eq!(fmt(&a), fmt(&b));
    }
}
