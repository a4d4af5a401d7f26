//! Scenario files: a plain JSON text schema describing number-field
//! towers, ramification data, declared external facts (ray class
//! degrees and Galois images quoted from the literature), and typed
//! checks with expected outcomes.
//!
//! Rationals are `"num/den"` strings; factored radicals are maps from
//! a prime (decimal string) or a registered ideal label to a rational
//! exponent. The `schema_version` field is mandatory. Validation
//! reports JSON-pointer style positions for every rejected element.

use std::collections::{BTreeMap, BTreeSet};

use serde::Deserialize;

use crate::bounds::{BoundMode, CharacterConductor, TameDegree};
use crate::exact::{parse_rational, FactoredRadical, PrimeLabel, Rational};
use crate::filtration::{FixedDimProfile, RamFiltration};
use crate::modrep::FpMat;
use crate::{Error, Result};

/// The only schema version this build understands.
pub const SCHEMA_VERSION: u32 = 1;

fn schema_err(path: String, message: impl Into<String>) -> Error {
    Error::Schema {
        path,
        message: message.into(),
    }
}

// ---------------------------------------------------------------------------
// Raw (serde) layer
// ---------------------------------------------------------------------------

type RawRadical = BTreeMap<String, String>;

fn default_true() -> bool {
    true
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawScenario {
    schema_version: u32,
    name: String,
    #[serde(default)]
    description: String,
    #[serde(default)]
    labels: BTreeMap<String, RawLabel>,
    fields: Vec<RawField>,
    #[serde(default)]
    steps: Vec<RawStep>,
    checks: Vec<RawCheck>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawLabel {
    p: u64,
    f: u32,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawField {
    name: String,
    degree: u64,
    #[serde(default)]
    disc: RawRadical,
}

#[derive(Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
enum RawStep {
    Filtration {
        id: String,
        field: String,
        p: u64,
        orders: Vec<u64>,
        residue_degree: u64,
        #[serde(default)]
        note: Option<String>,
    },
    Tame {
        id: String,
        base: String,
        primes: Vec<RawTamePrime>,
    },
    Characters {
        id: String,
        base: String,
        top: String,
        characters: Vec<RawCharacter>,
    },
    Fact {
        id: String,
        fact: String,
        #[serde(default)]
        base: Option<String>,
        #[serde(default)]
        conductor: Option<RawRadical>,
        #[serde(default)]
        degree: Option<u64>,
        payload: String,
        provenance: String,
    },
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTamePrime {
    p: u64,
    f: u64,
    g: u64,
    /// Tame ramification degree; omitted = supremum over all of them.
    #[serde(default)]
    e: Option<u64>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCharacter {
    conductor: RawRadical,
    multiplicity: u32,
}

#[derive(Debug, Deserialize)]
struct RawCheck {
    id: String,
    cite: String,
    #[serde(default = "default_true")]
    strict: bool,
    #[serde(default)]
    notes: Vec<String>,
    #[serde(flatten)]
    params: RawCheckParams,
}

#[derive(Debug, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
enum RawCheckParams {
    FontaineBound {
        base: String,
        p: u64,
        level: String,
        ell: u64,
        expect_radical: RawRadical,
        #[serde(default)]
        expect_approx: Option<String>,
    },
    OdlyzkoCap {
        delta: RawRadical,
        mode: String,
        expect_cap: u32,
        #[serde(default)]
        excludes: Option<u32>,
        #[serde(default)]
        allows: Option<u32>,
    },
    RamificationCap {
        base: String,
        #[serde(default)]
        torsion: Option<RawTorsion>,
        #[serde(default)]
        tame: Vec<RawTameSup>,
        expect_radical: RawRadical,
        #[serde(default)]
        expect_approx: Option<String>,
        #[serde(default)]
        mode: Option<String>,
        #[serde(default)]
        expect_cap: Option<u32>,
        #[serde(default)]
        excludes: Option<u32>,
    },
    FiltrationLevel {
        step: String,
        expect_level: String,
        #[serde(default)]
        expect_disc_valuation: Option<String>,
    },
    DifferentValuation {
        step: String,
        expect: String,
    },
    TameExtensionBound {
        step: String,
        expect_radical: RawRadical,
        mode: String,
        expect_cap: u32,
        #[serde(default)]
        expect_degree_ratio: Option<String>,
    },
    ConductorDiscriminant {
        step: String,
        #[serde(default)]
        expect_rel_disc: Option<RawRadical>,
        expect_delta: RawRadical,
        #[serde(default)]
        matches_field: Option<String>,
        #[serde(default)]
        exceeds: Option<RawExceeds>,
    },
    RcfViolations {
        cases: Vec<RawRcfCase>,
    },
    FontaineLocalCap {
        ell: u64,
        n: u32,
        e: u64,
        expect_cap: String,
        #[serde(default)]
        level_of_step: Option<String>,
    },
    GroupCaps {
        preset: String,
        expect_solvable: u64,
        expect_cyclic_normal: u64,
    },
    GroupNormalPresence {
        cases: Vec<RawNormalCase>,
    },
    ArtinCap {
        ell: u64,
        n: u32,
        e: u64,
        expect_level_cap: String,
        expect_artin_cap: String,
    },
    ArtinExponent {
        orders: Vec<u64>,
        total: u64,
        dim: u32,
        fixed_dims: Vec<u32>,
        expect: String,
        #[serde(default)]
        cap: Option<String>,
        #[serde(default)]
        expect_exceeds_cap: Option<bool>,
    },
    InertiaDiscBound {
        base: String,
        relative_degree: u64,
        inertia_order: u64,
        labels: Vec<String>,
        characters: Vec<RawBlockCharacter>,
        expect_rel_valuation: String,
        expect_delta: RawRadical,
        mode: String,
        expect_cap: u32,
        #[serde(default)]
        excludes: Option<u32>,
    },
    ConductorCases {
        c: u32,
        g: u32,
        #[serde(default)]
        require_u_positive: bool,
        #[serde(default)]
        require_delta_zero: bool,
        expect_cases: Vec<(u32, u32, u32)>,
    },
    ConductorExponent {
        u: u32,
        t: u32,
        delta: String,
        g: u32,
        expect: String,
    },
    WildLevelBound {
        delta: String,
        min_codim: u32,
        expect: String,
    },
    SerreDelta {
        orders: Vec<u64>,
        total: u64,
        dim: u32,
        fixed_dims: Vec<u32>,
        expect: String,
    },
    OrbitFixedDim {
        generators: Vec<Vec<Vec<u8>>>,
        expect_fixed_dim: u32,
    },
    Mestre {
        cases: Vec<RawMestreCase>,
    },
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTorsion {
    ell: u64,
    n: u32,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTameSup {
    p: u64,
    e: u64,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawExceeds {
    ambient: RawRadical,
    at: Vec<u64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawRcfCase {
    id: String,
    route: String,
    #[serde(default)]
    base: Option<String>,
    #[serde(default)]
    conductor: Option<RawRadical>,
    #[serde(default)]
    degree: Option<u64>,
    #[serde(default)]
    at: Option<u64>,
    #[serde(default)]
    orders: Option<Vec<u64>>,
    #[serde(default)]
    total: Option<u64>,
    bound: String,
    #[serde(default = "default_true")]
    strict: bool,
    expect_value: String,
    #[serde(default = "default_true")]
    expect_violation: bool,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawNormalCase {
    preset: String,
    order: u64,
    expect_present: bool,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawBlockCharacter {
    exponent: String,
    multiplicity: u32,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMestreCase {
    n: u64,
    g: u32,
    expect: bool,
}

// ---------------------------------------------------------------------------
// Resolved model
// ---------------------------------------------------------------------------

/// A declared number field with exact discriminant data.
#[derive(Debug, Clone)]
pub struct FieldDecl {
    pub name: String,
    pub degree: u64,
    pub disc: FactoredRadical,
    pub root_disc: FactoredRadical,
}

/// Registered ideal label: residue characteristic and residue degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LabelDecl {
    pub p: u64,
    pub f: u32,
}

/// One computed ramification chain at a prime of a declared field.
#[derive(Debug, Clone)]
pub struct FiltrationStep {
    pub id: String,
    pub field: String,
    pub p: u64,
    pub filtration: RamFiltration,
    pub residue_degree: u64,
    pub note: Option<String>,
}

/// Tame growth data for one prime of the base field.
#[derive(Debug, Clone)]
pub struct TamePrimeDecl {
    pub p: u64,
    pub f: u64,
    pub g: u64,
    pub e: TameDegree,
}

/// A tame extension step over a declared base field.
#[derive(Debug, Clone)]
pub struct TameStep {
    pub id: String,
    pub base: String,
    pub primes: Vec<TamePrimeDecl>,
}

/// A character-conductor multiset describing an abelian step.
#[derive(Debug, Clone)]
pub struct CharactersStep {
    pub id: String,
    pub base: String,
    pub top: String,
    pub characters: Vec<CharacterConductor>,
}

/// Extension steps that checks can reference by id.
#[derive(Debug, Clone)]
pub enum Step {
    Filtration(FiltrationStep),
    Tame(TameStep),
    Characters(CharactersStep),
}

impl Step {
    pub fn id(&self) -> &str {
        match self {
            Step::Filtration(s) => &s.id,
            Step::Tame(s) => &s.id,
            Step::Characters(s) => &s.id,
        }
    }
}

/// Kinds of declared external facts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FactKind {
    RayClassDegree,
    GaloisImage,
    RepType,
}

impl FactKind {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "ray-class-degree" => Some(FactKind::RayClassDegree),
            "galois-image" => Some(FactKind::GaloisImage),
            "rep-type" => Some(FactKind::RepType),
            _ => None,
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            FactKind::RayClassDegree => "ray-class-degree",
            FactKind::GaloisImage => "galois-image",
            FactKind::RepType => "rep-type",
        }
    }
}

/// A declared external fact. Never computed; echoed into reports.
#[derive(Debug, Clone)]
pub struct FactDecl {
    pub id: String,
    pub kind: FactKind,
    pub base: Option<String>,
    pub conductor: Option<FactoredRadical>,
    pub degree: Option<u64>,
    pub payload: String,
    pub provenance: String,
}

/// A violation case inside an `rcf-violations` check.
#[derive(Debug, Clone)]
pub enum RcfRoute {
    /// Root-discriminant route: discriminant `c^{p-1}` of a degree-`p`
    /// subextension of the ray class field of conductor `c`, normed
    /// down and compared at one rational prime.
    RootDisc {
        base: String,
        conductor: FactoredRadical,
        degree: u64,
        at: u64,
    },
    /// Level route: a declared lower-numbering chain whose level must
    /// stay within the bound.
    Level { filtration: RamFiltration },
}

#[derive(Debug, Clone)]
pub struct RcfCase {
    pub id: String,
    pub route: RcfRoute,
    pub bound: Rational,
    /// `true`: the bound is strict (`value < bound` required), so a
    /// violation is `value ≥ bound`. `false`: the bound is non-strict
    /// (`value ≤ bound` allowed), so a violation is `value > bound`.
    pub strict: bool,
    pub expect_value: Rational,
    pub expect_violation: bool,
}

#[derive(Debug, Clone)]
pub struct NormalCase {
    pub preset: String,
    pub order: u64,
    pub expect_present: bool,
}

#[derive(Debug, Clone)]
pub struct BlockCharacter {
    pub exponent: Rational,
    pub multiplicity: u32,
}

#[derive(Debug, Clone)]
pub struct MestreCase {
    pub n: u64,
    pub g: u32,
    pub expect: bool,
}

#[derive(Debug, Clone)]
pub struct ExceedsExpect {
    pub ambient: FactoredRadical,
    pub at: Vec<u64>,
}

/// Fully resolved check parameters, exact values parsed.
#[derive(Debug, Clone)]
pub enum CheckParams {
    FontaineBound {
        base: String,
        p: u64,
        level: Rational,
        ell: u64,
        expect_radical: FactoredRadical,
        expect_approx: Option<String>,
    },
    OdlyzkoCap {
        delta: FactoredRadical,
        mode: BoundMode,
        expect_cap: u32,
        excludes: Option<u32>,
        allows: Option<u32>,
    },
    RamificationCap {
        base: String,
        torsion: Option<(u64, u32)>,
        tame: Vec<(u64, u64)>,
        expect_radical: FactoredRadical,
        expect_approx: Option<String>,
        mode: Option<BoundMode>,
        expect_cap: Option<u32>,
        excludes: Option<u32>,
    },
    FiltrationLevel {
        step: String,
        expect_level: Rational,
        expect_disc_valuation: Option<Rational>,
    },
    DifferentValuation {
        step: String,
        expect: Rational,
    },
    TameExtensionBound {
        step: String,
        expect_radical: FactoredRadical,
        mode: BoundMode,
        expect_cap: u32,
        expect_degree_ratio: Option<Rational>,
    },
    ConductorDiscriminant {
        step: String,
        expect_rel_disc: Option<FactoredRadical>,
        expect_delta: FactoredRadical,
        matches_field: Option<String>,
        exceeds: Option<ExceedsExpect>,
    },
    RcfViolations {
        cases: Vec<RcfCase>,
    },
    FontaineLocalCap {
        ell: u64,
        n: u32,
        e: u64,
        expect_cap: Rational,
        level_of_step: Option<String>,
    },
    GroupCaps {
        preset: String,
        expect_solvable: u64,
        expect_cyclic_normal: u64,
    },
    GroupNormalPresence {
        cases: Vec<NormalCase>,
    },
    ArtinCap {
        ell: u64,
        n: u32,
        e: u64,
        expect_level_cap: Rational,
        expect_artin_cap: Rational,
    },
    ArtinExponent {
        filtration: RamFiltration,
        profile: FixedDimProfile,
        expect: Rational,
        cap: Option<Rational>,
        expect_exceeds_cap: Option<bool>,
    },
    InertiaDiscBound {
        base: String,
        relative_degree: u64,
        inertia_order: u64,
        labels: Vec<String>,
        characters: Vec<BlockCharacter>,
        expect_rel_valuation: Rational,
        expect_delta: FactoredRadical,
        mode: BoundMode,
        expect_cap: u32,
        excludes: Option<u32>,
    },
    ConductorCases {
        c: u32,
        g: u32,
        require_u_positive: bool,
        require_delta_zero: bool,
        expect_cases: Vec<(u32, u32, u32)>,
    },
    ConductorExponent {
        u: u32,
        t: u32,
        delta: Rational,
        g: u32,
        expect: Rational,
    },
    WildLevelBound {
        delta: Rational,
        min_codim: u32,
        expect: Rational,
    },
    SerreDelta {
        filtration: RamFiltration,
        profile: FixedDimProfile,
        expect: Rational,
    },
    OrbitFixedDim {
        generators: Vec<FpMat>,
        expect_fixed_dim: u32,
    },
    Mestre {
        cases: Vec<MestreCase>,
    },
}

impl CheckParams {
    /// Bound-table mode the check consults, when it consults one.
    pub fn bound_mode(&self) -> Option<BoundMode> {
        match self {
            CheckParams::OdlyzkoCap { mode, .. } => Some(*mode),
            CheckParams::RamificationCap { mode, .. } => *mode,
            CheckParams::TameExtensionBound { mode, .. } => Some(*mode),
            CheckParams::InertiaDiscBound { mode, .. } => Some(*mode),
            _ => None,
        }
    }

    pub fn type_name(&self) -> &'static str {
        match self {
            CheckParams::FontaineBound { .. } => "fontaine-bound",
            CheckParams::OdlyzkoCap { .. } => "odlyzko-cap",
            CheckParams::RamificationCap { .. } => "ramification-cap",
            CheckParams::FiltrationLevel { .. } => "filtration-level",
            CheckParams::DifferentValuation { .. } => "different-valuation",
            CheckParams::TameExtensionBound { .. } => "tame-extension-bound",
            CheckParams::ConductorDiscriminant { .. } => "conductor-discriminant",
            CheckParams::RcfViolations { .. } => "rcf-violations",
            CheckParams::FontaineLocalCap { .. } => "fontaine-local-cap",
            CheckParams::GroupCaps { .. } => "group-caps",
            CheckParams::GroupNormalPresence { .. } => "group-normal-presence",
            CheckParams::ArtinCap { .. } => "artin-cap",
            CheckParams::ArtinExponent { .. } => "artin-exponent",
            CheckParams::InertiaDiscBound { .. } => "inertia-disc-bound",
            CheckParams::ConductorCases { .. } => "conductor-cases",
            CheckParams::ConductorExponent { .. } => "conductor-exponent",
            CheckParams::WildLevelBound { .. } => "wild-level-bound",
            CheckParams::SerreDelta { .. } => "serre-delta",
            CheckParams::OrbitFixedDim { .. } => "orbit-fixed-dim",
            CheckParams::Mestre { .. } => "mestre",
        }
    }
}

/// One typed check with its expected outcome.
#[derive(Debug, Clone)]
pub struct Check {
    pub id: String,
    pub cite: String,
    pub strict: bool,
    pub notes: Vec<String>,
    pub params: CheckParams,
}

/// A validated scenario: fields, labels, steps, facts and checks.
#[derive(Debug, Clone)]
pub struct AuditScenario {
    pub name: String,
    pub description: String,
    pub labels: BTreeMap<String, LabelDecl>,
    pub fields: Vec<FieldDecl>,
    pub steps: Vec<Step>,
    pub facts: Vec<FactDecl>,
    pub checks: Vec<Check>,
}

impl AuditScenario {
    pub fn field(&self, name: &str) -> Option<&FieldDecl> {
        self.fields.iter().find(|f| f.name == name)
    }

    pub fn step(&self, id: &str) -> Option<&Step> {
        self.steps.iter().find(|s| s.id() == id)
    }

    /// Resolved conductors of the declared ray-class-degree facts,
    /// paired with their base fields; lets tests pin down exactly
    /// which class-field computations are consumed, never reproduced.
    pub fn ray_class_fact_conductors(&self) -> Vec<(String, FactoredRadical)> {
        self.facts
            .iter()
            .filter(|f| f.kind == FactKind::RayClassDegree)
            .map(|f| {
                (
                    f.base.clone().unwrap_or_default(),
                    f.conductor.clone().unwrap_or_else(FactoredRadical::one),
                )
            })
            .collect()
    }
}

// ---------------------------------------------------------------------------
// Loading & validation
// ---------------------------------------------------------------------------

/// Loads and validates a scenario file.
pub fn load_scenario(path: &std::path::Path) -> Result<AuditScenario> {
    let text = std::fs::read_to_string(path).map_err(|e| {
        schema_err(String::new(), format!("cannot read {}: {e}", path.display()))
    })?;
    load_scenario_str(&text)
}

/// Loads and validates a scenario from JSON text. Parse errors carry
/// line/column positions; semantic errors carry JSON-pointer paths.
pub fn load_scenario_str(text: &str) -> Result<AuditScenario> {
    let value: serde_json::Value = serde_json::from_str(text)
        .map_err(|e| schema_err(String::new(), format!("JSON parse error: {e}")))?;
    load_scenario_value(&value)
}

/// Loads and validates a scenario from an already-parsed JSON value
/// (used by mutation tests that perturb single constants in place).
pub fn load_scenario_value(value: &serde_json::Value) -> Result<AuditScenario> {
    let raw: RawScenario = serde_json::from_value(value.clone())
        .map_err(|e| schema_err(String::new(), format!("schema mismatch: {e}")))?;
    resolve(raw)
}

fn parse_rational_at(s: &str, path: &str) -> Result<Rational> {
    parse_rational(s).map_err(|e| schema_err(path.to_string(), format!("bad rational `{s}`: {e}")))
}

/// Resolves a radical map whose keys must be decimal rational primes.
fn resolve_prime_radical(raw: &RawRadical, path: &str) -> Result<FactoredRadical> {
    let mut pairs = Vec::new();
    for (key, exp) in raw {
        let p: u64 = key.parse().map_err(|_| {
            schema_err(
                format!("{path}/{key}"),
                "key must be a rational prime in decimal",
            )
        })?;
        let label = PrimeLabel::prime(p)
            .map_err(|e| schema_err(format!("{path}/{key}"), e.to_string()))?;
        let e = parse_rational_at(exp, &format!("{path}/{key}"))?;
        pairs.push((label, e));
    }
    FactoredRadical::new(pairs).map_err(|e| schema_err(path.to_string(), e.to_string()))
}

/// Resolves a conductor map whose keys are registered ideal labels or
/// decimal rational primes.
fn resolve_conductor(
    raw: &RawRadical,
    labels: &BTreeMap<String, LabelDecl>,
    path: &str,
) -> Result<FactoredRadical> {
    let mut pairs = Vec::new();
    for (key, exp) in raw {
        let label = if let Ok(p) = key.parse::<u64>() {
            PrimeLabel::prime(p).map_err(|e| schema_err(format!("{path}/{key}"), e.to_string()))?
        } else {
            let decl = labels.get(key).ok_or_else(|| {
                schema_err(format!("{path}/{key}"), "unregistered ideal label")
            })?;
            PrimeLabel::ideal(key, decl.p, decl.f)
                .map_err(|e| schema_err(format!("{path}/{key}"), e.to_string()))?
        };
        let e = parse_rational_at(exp, &format!("{path}/{key}"))?;
        pairs.push((label, e));
    }
    FactoredRadical::new(pairs).map_err(|e| schema_err(path.to_string(), e.to_string()))
}

fn build_filtration(orders: &[u64], total: u64, path: &str) -> Result<RamFiltration> {
    RamFiltration::new(orders.to_vec(), total)
        .map_err(|e| schema_err(path.to_string(), e.to_string()))
}

fn build_profile(dim: u32, fixed_dims: &[u32], path: &str) -> Result<FixedDimProfile> {
    FixedDimProfile::new(dim, fixed_dims.to_vec())
        .map_err(|e| schema_err(path.to_string(), e.to_string()))
}

fn parse_mode(s: &str, path: &str) -> Result<BoundMode> {
    BoundMode::parse(s).map_err(|e| schema_err(path.to_string(), e.to_string()))
}

const GROUP_PRESETS: &[&str] = &[
    "c1", "c3", "s3", "d3", "d4", "d5", "sh16", "a4", "a5", "gl2f2", "gl2f3",
];

fn check_preset(name: &str, path: &str) -> Result<()> {
    if GROUP_PRESETS.contains(&name) {
        Ok(())
    } else {
        Err(schema_err(
            path.to_string(),
            format!("unknown group preset `{name}` (expected one of {GROUP_PRESETS:?})"),
        ))
    }
}

fn resolve(raw: RawScenario) -> Result<AuditScenario> {
    if raw.schema_version != SCHEMA_VERSION {
        return Err(schema_err(
            "/schema_version".into(),
            format!(
                "unsupported schema version {} (this build reads {SCHEMA_VERSION})",
                raw.schema_version
            ),
        ));
    }
    if raw.name.is_empty() {
        return Err(schema_err("/name".into(), "scenario name must be non-empty"));
    }

    // Labels.
    let mut labels = BTreeMap::new();
    for (name, l) in &raw.labels {
        let path = format!("/labels/{name}");
        PrimeLabel::ideal(name, l.p, l.f).map_err(|e| schema_err(path.clone(), e.to_string()))?;
        labels.insert(name.clone(), LabelDecl { p: l.p, f: l.f });
    }

    // Fields.
    if raw.fields.is_empty() {
        return Err(schema_err("/fields".into(), "at least one field required"));
    }
    let mut fields: Vec<FieldDecl> = Vec::new();
    for (i, f) in raw.fields.iter().enumerate() {
        let path = format!("/fields/{i}");
        if f.name.is_empty() {
            return Err(schema_err(format!("{path}/name"), "field name must be non-empty"));
        }
        if fields.iter().any(|g| g.name == f.name) {
            return Err(schema_err(
                format!("{path}/name"),
                format!("duplicate field name `{}`", f.name),
            ));
        }
        if f.degree == 0 {
            return Err(schema_err(format!("{path}/degree"), "degree must be positive"));
        }
        let disc = resolve_prime_radical(&f.disc, &format!("{path}/disc"))?;
        let root_disc = crate::bounds::root_discriminant(&disc, f.degree)
            .map_err(|e| schema_err(format!("{path}/disc"), e.to_string()))?;
        fields.push(FieldDecl {
            name: f.name.clone(),
            degree: f.degree,
            disc,
            root_disc,
        });
    }
    let field_exists = |name: &str| fields.iter().any(|f| f.name == name);

    // Steps and facts.
    let mut steps: Vec<Step> = Vec::new();
    let mut facts: Vec<FactDecl> = Vec::new();
    let mut ids = BTreeSet::new();
    for (i, s) in raw.steps.iter().enumerate() {
        let path = format!("/steps/{i}");
        let id = match s {
            RawStep::Filtration { id, .. }
            | RawStep::Tame { id, .. }
            | RawStep::Characters { id, .. }
            | RawStep::Fact { id, .. } => id.clone(),
        };
        if id.is_empty() || !ids.insert(id.clone()) {
            return Err(schema_err(
                format!("{path}/id"),
                format!("step id `{id}` must be non-empty and unique"),
            ));
        }
        match s {
            RawStep::Filtration {
                id,
                field,
                p,
                orders,
                residue_degree,
                note,
            } => {
                if !field_exists(field) {
                    return Err(schema_err(format!("{path}/field"), format!("unknown field `{field}`")));
                }
                if !crate::exact::is_prime_u64(*p) {
                    return Err(schema_err(format!("{path}/p"), format!("{p} is not prime")));
                }
                let filtration = RamFiltration::totally_ramified(orders.clone())
                    .map_err(|e| schema_err(format!("{path}/orders"), e.to_string()))?;
                // The chain lives inside the full decomposition group:
                // e·f must divide the field degree.
                let fdeg = fields.iter().find(|f| &f.name == field).unwrap().degree;
                let ef = filtration.e() * residue_degree;
                if *residue_degree == 0 || ef == 0 || fdeg % ef != 0 {
                    return Err(schema_err(
                        format!("{path}/residue_degree"),
                        format!("e·f = {ef} must divide the degree {fdeg} of `{field}`"),
                    ));
                }
                steps.push(Step::Filtration(FiltrationStep {
                    id: id.clone(),
                    field: field.clone(),
                    p: *p,
                    filtration,
                    residue_degree: *residue_degree,
                    note: note.clone(),
                }));
            }
            RawStep::Tame { id, base, primes } => {
                if !field_exists(base) {
                    return Err(schema_err(format!("{path}/base"), format!("unknown field `{base}`")));
                }
                let mut decls = Vec::new();
                for (j, tp) in primes.iter().enumerate() {
                    let ppath = format!("{path}/primes/{j}");
                    if !crate::exact::is_prime_u64(tp.p) {
                        return Err(schema_err(format!("{ppath}/p"), format!("{} is not prime", tp.p)));
                    }
                    let e = match tp.e {
                        Some(0) => {
                            return Err(schema_err(format!("{ppath}/e"), "tame degree must be positive"))
                        }
                        Some(e) => TameDegree::Known(e),
                        None => TameDegree::Sup,
                    };
                    decls.push(TamePrimeDecl {
                        p: tp.p,
                        f: tp.f,
                        g: tp.g,
                        e,
                    });
                }
                steps.push(Step::Tame(TameStep {
                    id: id.clone(),
                    base: base.clone(),
                    primes: decls,
                }));
            }
            RawStep::Characters {
                id,
                base,
                top,
                characters,
            } => {
                for (role, name) in [("base", base), ("top", top)] {
                    if !field_exists(name) {
                        return Err(schema_err(
                            format!("{path}/{role}"),
                            format!("unknown field `{name}`"),
                        ));
                    }
                }
                let mut chars = Vec::new();
                for (j, c) in characters.iter().enumerate() {
                    let cpath = format!("{path}/characters/{j}/conductor");
                    let conductor = resolve_conductor(&c.conductor, &labels, &cpath)?;
                    if c.multiplicity == 0 {
                        return Err(schema_err(
                            format!("{path}/characters/{j}/multiplicity"),
                            "multiplicity must be positive",
                        ));
                    }
                    chars.push(CharacterConductor {
                        conductor,
                        multiplicity: c.multiplicity,
                    });
                }
                steps.push(Step::Characters(CharactersStep {
                    id: id.clone(),
                    base: base.clone(),
                    top: top.clone(),
                    characters: chars,
                }));
            }
            RawStep::Fact {
                id,
                fact,
                base,
                conductor,
                degree,
                payload,
                provenance,
            } => {
                let kind = FactKind::parse(fact).ok_or_else(|| {
                    schema_err(
                        format!("{path}/fact"),
                        format!("unknown fact kind `{fact}` (ray-class-degree | galois-image | rep-type)"),
                    )
                })?;
                if let Some(b) = base {
                    if !field_exists(b) {
                        return Err(schema_err(format!("{path}/base"), format!("unknown field `{b}`")));
                    }
                }
                let conductor = match conductor {
                    Some(c) => Some(resolve_conductor(c, &labels, &format!("{path}/conductor"))?),
                    None => None,
                };
                if kind == FactKind::RayClassDegree && conductor.is_none() {
                    return Err(schema_err(
                        format!("{path}/conductor"),
                        "ray-class-degree facts must declare their conductor",
                    ));
                }
                if provenance.is_empty() {
                    return Err(schema_err(format!("{path}/provenance"), "provenance required"));
                }
                facts.push(FactDecl {
                    id: id.clone(),
                    kind,
                    base: base.clone(),
                    conductor,
                    degree: *degree,
                    payload: payload.clone(),
                    provenance: provenance.clone(),
                });
            }
        }
    }

    let step_kind = |id: &str| -> Option<&'static str> {
        steps.iter().find(|s| s.id() == id).map(|s| match s {
            Step::Filtration(_) => "filtration",
            Step::Tame(_) => "tame",
            Step::Characters(_) => "characters",
        })
    };
    let require_step = |id: &str, kind: &'static str, path: &str| -> Result<()> {
        match step_kind(id) {
            Some(k) if k == kind => Ok(()),
            Some(k) => Err(schema_err(
                path.to_string(),
                format!("step `{id}` has kind `{k}`, expected `{kind}`"),
            )),
            None => Err(schema_err(path.to_string(), format!("unknown step `{id}`"))),
        }
    };
    let require_field = |name: &str, path: &str| -> Result<()> {
        if field_exists(name) {
            Ok(())
        } else {
            Err(schema_err(path.to_string(), format!("unknown field `{name}`")))
        }
    };

    // Checks.
    if raw.checks.is_empty() {
        return Err(schema_err("/checks".into(), "at least one check required"));
    }
    let mut checks = Vec::new();
    let mut check_ids = BTreeSet::new();
    for (i, c) in raw.checks.iter().enumerate() {
        let path = format!("/checks/{i}");
        if c.id.is_empty() || !check_ids.insert(c.id.clone()) {
            return Err(schema_err(
                format!("{path}/id"),
                format!("check id `{}` must be non-empty and unique", c.id),
            ));
        }
        if c.cite.is_empty() {
            return Err(schema_err(format!("{path}/cite"), "citation required"));
        }
        let params = resolve_check(&c.params, &labels, &require_field, &require_step, &path)?;
        checks.push(Check {
            id: c.id.clone(),
            cite: c.cite.clone(),
            strict: c.strict,
            notes: c.notes.clone(),
            params,
        });
    }

    Ok(AuditScenario {
        name: raw.name,
        description: raw.description,
        labels,
        fields,
        steps,
        facts,
        checks,
    })
}

fn resolve_check(
    raw: &RawCheckParams,
    labels: &BTreeMap<String, LabelDecl>,
    require_field: &dyn Fn(&str, &str) -> Result<()>,
    require_step: &dyn Fn(&str, &'static str, &str) -> Result<()>,
    path: &str,
) -> Result<CheckParams> {
    Ok(match raw {
        RawCheckParams::FontaineBound {
            base,
            p,
            level,
            ell,
            expect_radical,
            expect_approx,
        } => {
            require_field(base, &format!("{path}/base"))?;
            CheckParams::FontaineBound {
                base: base.clone(),
                p: *p,
                level: parse_rational_at(level, &format!("{path}/level"))?,
                ell: *ell,
                expect_radical: resolve_prime_radical(expect_radical, &format!("{path}/expect_radical"))?,
                expect_approx: expect_approx.clone(),
            }
        }
        RawCheckParams::OdlyzkoCap {
            delta,
            mode,
            expect_cap,
            excludes,
            allows,
        } => CheckParams::OdlyzkoCap {
            delta: resolve_prime_radical(delta, &format!("{path}/delta"))?,
            mode: parse_mode(mode, &format!("{path}/mode"))?,
            expect_cap: *expect_cap,
            excludes: *excludes,
            allows: *allows,
        },
        RawCheckParams::RamificationCap {
            base,
            torsion,
            tame,
            expect_radical,
            expect_approx,
            mode,
            expect_cap,
            excludes,
        } => {
            require_field(base, &format!("{path}/base"))?;
            let mode = match mode {
                Some(m) => Some(parse_mode(m, &format!("{path}/mode"))?),
                None => None,
            };
            if expect_cap.is_some() && mode.is_none() {
                return Err(schema_err(
                    format!("{path}/mode"),
                    "expect_cap requires a bound-table mode",
                ));
            }
            CheckParams::RamificationCap {
                base: base.clone(),
                torsion: torsion.as_ref().map(|t| (t.ell, t.n)),
                tame: tame.iter().map(|t| (t.p, t.e)).collect(),
                expect_radical: resolve_prime_radical(expect_radical, &format!("{path}/expect_radical"))?,
                expect_approx: expect_approx.clone(),
                mode,
                expect_cap: *expect_cap,
                excludes: *excludes,
            }
        }
        RawCheckParams::FiltrationLevel {
            step,
            expect_level,
            expect_disc_valuation,
        } => {
            require_step(step, "filtration", &format!("{path}/step"))?;
            CheckParams::FiltrationLevel {
                step: step.clone(),
                expect_level: parse_rational_at(expect_level, &format!("{path}/expect_level"))?,
                expect_disc_valuation: match expect_disc_valuation {
                    Some(v) => Some(parse_rational_at(v, &format!("{path}/expect_disc_valuation"))?),
                    None => None,
                },
            }
        }
        RawCheckParams::DifferentValuation { step, expect } => {
            require_step(step, "filtration", &format!("{path}/step"))?;
            CheckParams::DifferentValuation {
                step: step.clone(),
                expect: parse_rational_at(expect, &format!("{path}/expect"))?,
            }
        }
        RawCheckParams::TameExtensionBound {
            step,
            expect_radical,
            mode,
            expect_cap,
            expect_degree_ratio,
        } => {
            require_step(step, "tame", &format!("{path}/step"))?;
            CheckParams::TameExtensionBound {
                step: step.clone(),
                expect_radical: resolve_prime_radical(expect_radical, &format!("{path}/expect_radical"))?,
                mode: parse_mode(mode, &format!("{path}/mode"))?,
                expect_cap: *expect_cap,
                expect_degree_ratio: match expect_degree_ratio {
                    Some(r) => Some(parse_rational_at(r, &format!("{path}/expect_degree_ratio"))?),
                    None => None,
                },
            }
        }
        RawCheckParams::ConductorDiscriminant {
            step,
            expect_rel_disc,
            expect_delta,
            matches_field,
            exceeds,
        } => {
            require_step(step, "characters", &format!("{path}/step"))?;
            if let Some(f) = matches_field {
                require_field(f, &format!("{path}/matches_field"))?;
            }
            CheckParams::ConductorDiscriminant {
                step: step.clone(),
                expect_rel_disc: match expect_rel_disc {
                    Some(m) => Some(resolve_conductor(m, labels, &format!("{path}/expect_rel_disc"))?),
                    None => None,
                },
                expect_delta: resolve_prime_radical(expect_delta, &format!("{path}/expect_delta"))?,
                matches_field: matches_field.clone(),
                exceeds: match exceeds {
                    Some(e) => Some(ExceedsExpect {
                        ambient: resolve_prime_radical(&e.ambient, &format!("{path}/exceeds/ambient"))?,
                        at: e.at.clone(),
                    }),
                    None => None,
                },
            }
        }
        RawCheckParams::RcfViolations { cases } => {
            let mut resolved = Vec::new();
            let mut case_ids = BTreeSet::new();
            for (j, case) in cases.iter().enumerate() {
                let cpath = format!("{path}/cases/{j}");
                if case.id.is_empty() || !case_ids.insert(case.id.clone()) {
                    return Err(schema_err(
                        format!("{cpath}/id"),
                        "case id must be non-empty and unique",
                    ));
                }
                let route = match case.route.as_str() {
                    "root-disc" => {
                        let base = case.base.as_deref().ok_or_else(|| {
                            schema_err(format!("{cpath}/base"), "root-disc route needs a base field")
                        })?;
                        require_field(base, &format!("{cpath}/base"))?;
                        let conductor = case.conductor.as_ref().ok_or_else(|| {
                            schema_err(format!("{cpath}/conductor"), "root-disc route needs a conductor")
                        })?;
                        let degree = case.degree.ok_or_else(|| {
                            schema_err(format!("{cpath}/degree"), "root-disc route needs a degree")
                        })?;
                        if degree < 2 {
                            return Err(schema_err(format!("{cpath}/degree"), "degree must be ≥ 2"));
                        }
                        let at = case.at.ok_or_else(|| {
                            schema_err(format!("{cpath}/at"), "root-disc route needs a prime `at`")
                        })?;
                        RcfRoute::RootDisc {
                            base: base.to_string(),
                            conductor: resolve_conductor(conductor, labels, &format!("{cpath}/conductor"))?,
                            degree,
                            at,
                        }
                    }
                    "level" => {
                        let orders = case.orders.as_ref().ok_or_else(|| {
                            schema_err(format!("{cpath}/orders"), "level route needs chain orders")
                        })?;
                        let total = case
                            .total
                            .or_else(|| orders.first().copied())
                            .unwrap_or(1);
                        RcfRoute::Level {
                            filtration: build_filtration(orders, total, &format!("{cpath}/orders"))?,
                        }
                    }
                    other => {
                        return Err(schema_err(
                            format!("{cpath}/route"),
                            format!("unknown route `{other}` (root-disc | level)"),
                        ))
                    }
                };
                resolved.push(RcfCase {
                    id: case.id.clone(),
                    route,
                    bound: parse_rational_at(&case.bound, &format!("{cpath}/bound"))?,
                    strict: case.strict,
                    expect_value: parse_rational_at(&case.expect_value, &format!("{cpath}/expect_value"))?,
                    expect_violation: case.expect_violation,
                });
            }
            CheckParams::RcfViolations { cases: resolved }
        }
        RawCheckParams::FontaineLocalCap {
            ell,
            n,
            e,
            expect_cap,
            level_of_step,
        } => {
            if let Some(step) = level_of_step {
                require_step(step, "filtration", &format!("{path}/level_of_step"))?;
            }
            CheckParams::FontaineLocalCap {
                ell: *ell,
                n: *n,
                e: *e,
                expect_cap: parse_rational_at(expect_cap, &format!("{path}/expect_cap"))?,
                level_of_step: level_of_step.clone(),
            }
        }
        RawCheckParams::GroupCaps {
            preset,
            expect_solvable,
            expect_cyclic_normal,
        } => {
            check_preset(preset, &format!("{path}/preset"))?;
            CheckParams::GroupCaps {
                preset: preset.clone(),
                expect_solvable: *expect_solvable,
                expect_cyclic_normal: *expect_cyclic_normal,
            }
        }
        RawCheckParams::GroupNormalPresence { cases } => {
            let mut resolved = Vec::new();
            for (j, case) in cases.iter().enumerate() {
                check_preset(&case.preset, &format!("{path}/cases/{j}/preset"))?;
                resolved.push(NormalCase {
                    preset: case.preset.clone(),
                    order: case.order,
                    expect_present: case.expect_present,
                });
            }
            CheckParams::GroupNormalPresence { cases: resolved }
        }
        RawCheckParams::ArtinCap {
            ell,
            n,
            e,
            expect_level_cap,
            expect_artin_cap,
        } => CheckParams::ArtinCap {
            ell: *ell,
            n: *n,
            e: *e,
            expect_level_cap: parse_rational_at(expect_level_cap, &format!("{path}/expect_level_cap"))?,
            expect_artin_cap: parse_rational_at(expect_artin_cap, &format!("{path}/expect_artin_cap"))?,
        },
        RawCheckParams::ArtinExponent {
            orders,
            total,
            dim,
            fixed_dims,
            expect,
            cap,
            expect_exceeds_cap,
        } => {
            let filtration = build_filtration(orders, *total, &format!("{path}/orders"))?;
            let profile = build_profile(*dim, fixed_dims, &format!("{path}/fixed_dims"))?;
            profile
                .check_against(&filtration)
                .map_err(|e| schema_err(format!("{path}/fixed_dims"), e.to_string()))?;
            CheckParams::ArtinExponent {
                filtration,
                profile,
                expect: parse_rational_at(expect, &format!("{path}/expect"))?,
                cap: match cap {
                    Some(c) => Some(parse_rational_at(c, &format!("{path}/cap"))?),
                    None => None,
                },
                expect_exceeds_cap: *expect_exceeds_cap,
            }
        }
        RawCheckParams::InertiaDiscBound {
            base,
            relative_degree,
            inertia_order,
            labels: label_names,
            characters,
            expect_rel_valuation,
            expect_delta,
            mode,
            expect_cap,
            excludes,
        } => {
            require_field(base, &format!("{path}/base"))?;
            if *inertia_order == 0 || relative_degree % inertia_order != 0 {
                return Err(schema_err(
                    format!("{path}/inertia_order"),
                    format!("inertia order {inertia_order} must divide the relative degree {relative_degree}"),
                ));
            }
            for (j, l) in label_names.iter().enumerate() {
                if !labels.contains_key(l) {
                    return Err(schema_err(
                        format!("{path}/labels/{j}"),
                        format!("unregistered ideal label `{l}`"),
                    ));
                }
            }
            let mut chars = Vec::new();
            for (j, c) in characters.iter().enumerate() {
                chars.push(BlockCharacter {
                    exponent: parse_rational_at(&c.exponent, &format!("{path}/characters/{j}/exponent"))?,
                    multiplicity: c.multiplicity,
                });
            }
            CheckParams::InertiaDiscBound {
                base: base.clone(),
                relative_degree: *relative_degree,
                inertia_order: *inertia_order,
                labels: label_names.clone(),
                characters: chars,
                expect_rel_valuation: parse_rational_at(
                    expect_rel_valuation,
                    &format!("{path}/expect_rel_valuation"),
                )?,
                expect_delta: resolve_prime_radical(expect_delta, &format!("{path}/expect_delta"))?,
                mode: parse_mode(mode, &format!("{path}/mode"))?,
                expect_cap: *expect_cap,
                excludes: *excludes,
            }
        }
        RawCheckParams::ConductorCases {
            c,
            g,
            require_u_positive,
            require_delta_zero,
            expect_cases,
        } => CheckParams::ConductorCases {
            c: *c,
            g: *g,
            require_u_positive: *require_u_positive,
            require_delta_zero: *require_delta_zero,
            expect_cases: expect_cases.clone(),
        },
        RawCheckParams::ConductorExponent { u, t, delta, g, expect } => CheckParams::ConductorExponent {
            u: *u,
            t: *t,
            delta: parse_rational_at(delta, &format!("{path}/delta"))?,
            g: *g,
            expect: parse_rational_at(expect, &format!("{path}/expect"))?,
        },
        RawCheckParams::WildLevelBound {
            delta,
            min_codim,
            expect,
        } => CheckParams::WildLevelBound {
            delta: parse_rational_at(delta, &format!("{path}/delta"))?,
            min_codim: *min_codim,
            expect: parse_rational_at(expect, &format!("{path}/expect"))?,
        },
        RawCheckParams::SerreDelta {
            orders,
            total,
            dim,
            fixed_dims,
            expect,
        } => {
            let filtration = build_filtration(orders, *total, &format!("{path}/orders"))?;
            let profile = build_profile(*dim, fixed_dims, &format!("{path}/fixed_dims"))?;
            profile
                .check_against(&filtration)
                .map_err(|e| schema_err(format!("{path}/fixed_dims"), e.to_string()))?;
            CheckParams::SerreDelta {
                filtration,
                profile,
                expect: parse_rational_at(expect, &format!("{path}/expect"))?,
            }
        }
        RawCheckParams::OrbitFixedDim {
            generators,
            expect_fixed_dim,
        } => {
            if generators.is_empty() {
                return Err(schema_err(format!("{path}/generators"), "at least one generator"));
            }
            let n = generators[0].len();
            let mut mats = Vec::new();
            for (j, g) in generators.iter().enumerate() {
                let gpath = format!("{path}/generators/{j}");
                if g.len() != n || g.iter().any(|row| row.len() != n) {
                    return Err(schema_err(gpath, format!("generator must be a {n}x{n} matrix")));
                }
                let entries: Vec<u8> = g.iter().flatten().copied().collect();
                if entries.iter().any(|&x| x > 1) {
                    return Err(schema_err(gpath, "entries must be 0 or 1 over F2"));
                }
                let mat = FpMat::new(2, n, entries)
                    .map_err(|e| schema_err(gpath, e.to_string()))?;
                mats.push(mat);
            }
            CheckParams::OrbitFixedDim {
                generators: mats,
                expect_fixed_dim: *expect_fixed_dim,
            }
        }
        RawCheckParams::Mestre { cases } => CheckParams::Mestre {
            cases: cases
                .iter()
                .map(|c| MestreCase {
                    n: c.n,
                    g: c.g,
                    expect: c.expect,
                })
                .collect(),
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn minimal(extra_checks: &str) -> String {
        format!(
            r#"{{
  "schema_version": 1,
  "name": "t",
  "labels": {{"pi2": {{"p": 2, "f": 2}}}},
  "fields": [
    {{"name": "Q", "degree": 1, "disc": {{}}}},
    {{"name": "F", "degree": 16, "disc": {{"2": "32", "3": "14"}}}}
  ],
  "steps": [
    {{"kind": "filtration", "id": "s1", "field": "F", "p": 2,
      "orders": [8, 4, 4, 4], "residue_degree": 2}},
    {{"kind": "fact", "id": "f1", "fact": "ray-class-degree", "base": "F",
      "conductor": {{"pi2": "8"}}, "degree": 4,
      "payload": "first nontrivial ray class field",
      "provenance": "computer algebra class-field computation"}}
  ],
  "checks": [{extra_checks}]
}}"#
        )
    }

    #[test]
    fn loads_a_minimal_scenario() {
        let text = minimal(
            r#"{"id": "c1", "type": "filtration-level", "step": "s1",
                "expect_level": "3/2", "expect_disc_valuation": "32",
                "cite": "ramification chain"}"#,
        );
        let s = load_scenario_str(&text).unwrap();
        assert_eq!(s.name, "t");
        assert_eq!(s.fields.len(), 2);
        assert_eq!(s.checks.len(), 1);
        assert_eq!(s.facts.len(), 1);
        assert_eq!(s.checks[0].params.type_name(), "filtration-level");
        assert!(s.checks[0].strict);
        let conductors = s.ray_class_fact_conductors();
        assert_eq!(conductors.len(), 1);
        assert_eq!(conductors[0].0, "F");
    }

    #[test]
    fn rejects_empty_and_malformed_inputs() {
        assert!(matches!(
            load_scenario_str(""),
            Err(Error::Schema { .. })
        ));
        assert!(load_scenario_str("{}").is_err());
        // Wrong schema version.
        let bad = minimal(
            r#"{"id": "c1", "type": "mestre", "cases": [{"n": 27, "g": 1, "expect": true}],
                "cite": "x"}"#,
        )
        .replace("\"schema_version\": 1", "\"schema_version\": 2");
        match load_scenario_str(&bad) {
            Err(Error::Schema { path, .. }) => assert_eq!(path, "/schema_version"),
            other => panic!("expected schema error, got {other:?}"),
        }
    }

    #[test]
    fn rejects_unknown_check_types_and_labels() {
        let bad = minimal(
            r#"{"id": "c1", "type": "no-such-check", "cite": "x"}"#,
        );
        assert!(load_scenario_str(&bad).is_err());
        // Unregistered conductor label inside a fact.
        let bad = minimal(
            r#"{"id": "c1", "type": "mestre", "cases": [{"n": 27, "g": 1, "expect": true}],
                "cite": "x"}"#,
        )
        .replace("\"pi2\": \"8\"", "\"pi9\": \"8\"");
        match load_scenario_str(&bad) {
            Err(Error::Schema { path, .. }) => {
                assert!(path.contains("/conductor"), "path was {path}")
            }
            other => panic!("expected schema error, got {other:?}"),
        }
    }

    #[test]
    fn rejects_malformed_rationals_with_positions() {
        let bad = minimal(
            r#"{"id": "c1", "type": "filtration-level", "step": "s1",
                "expect_level": "3//2", "cite": "x"}"#,
        );
        match load_scenario_str(&bad) {
            Err(Error::Schema { path, message }) => {
                assert_eq!(path, "/checks/0/expect_level");
                assert!(message.contains("3//2"));
            }
            other => panic!("expected schema error, got {other:?}"),
        }
    }

    #[test]
    fn rational_exponents_round_trip_exactly() {
        let text = minimal(
            r#"{"id": "c1", "type": "odlyzko-cap",
                "delta": {"2": "245/96", "3": "124/96"},
                "mode": "grh", "expect_cap": 2400, "cite": "x"}"#,
        );
        let s = load_scenario_str(&text).unwrap();
        match &s.checks[0].params {
            CheckParams::OdlyzkoCap { delta, .. } => {
                assert_eq!(delta.exponent_of_prime(2), crate::exact::rat(245, 96));
                assert_eq!(delta.exponent_of_prime(3), crate::exact::rat(31, 24));
            }
            other => panic!("unexpected params {other:?}"),
        }
    }

    #[test]
    fn duplicate_ids_are_rejected() {
        let text = minimal(
            r#"{"id": "c1", "type": "mestre", "cases": [{"n": 27, "g": 1, "expect": true}], "cite": "x"},
               {"id": "c1", "type": "mestre", "cases": [{"n": 27, "g": 1, "expect": true}], "cite": "x"}"#,
        );
        match load_scenario_str(&text) {
            Err(Error::Schema { path, .. }) => assert_eq!(path, "/checks/1/id"),
            other => panic!("expected schema error, got {other:?}"),
        }
    }
}
