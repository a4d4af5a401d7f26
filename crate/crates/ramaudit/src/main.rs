//! Command-line front end: scenario runner plus small exact-arithmetic
//! calculators for ramification chains, discriminant degree caps,
//! newform levels, finite-group fact sheets and conductor cases.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use ramaudit::audit::{self, RunMode};
use ramaudit::bounds::{BoundMode, DegreeCap, OdlyzkoTable};
use ramaudit::conductor::{self, CaseConstraints};
use ramaudit::exact::{
    parse_rational, radical_approx, rational_str, FactoredRadical, Rational,
};
use ramaudit::filtration::{
    different_valuation, discriminant_valuation, herbrand_phi, herbrand_psi, u_max,
    RamFiltration,
};
use ramaudit::modrep::{
    degree_partition, embeddings_in_gl2, gl2_elements, group_preset, solvable_subgroup_caps,
};
use ramaudit::newform::{
    catalogue, classify_table, level_exponent_bound, max_level_exponent, newform_level_of_ram,
    row_threshold_holds, surviving_newforms, AutomorphicCase, NewformRecord,
};

#[derive(Parser)]
#[command(
    name = "ramaudit",
    version,
    about = "Exact-arithmetic audits of ramification filtrations, discriminant bounds and finite-group facts"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run a JSON audit scenario and report PASS/FAIL per check.
    Run(RunArgs),
    /// Herbrand transition functions and level of a ramification chain.
    Herbrand(HerbrandArgs),
    /// Degree cap for a factored root discriminant from the bound table.
    Odlyzko(OdlyzkoArgs),
    /// Ramification level of one newform record.
    NewformLevel(NewformLevelArgs),
    /// Recompute the embedded newform catalogue with workable thresholds.
    NewformTable,
    /// Finite-group and modular-representation fact sheets.
    Modrep {
        #[command(subcommand)]
        cmd: ModrepCmd,
    },
    /// Conductor-exponent arithmetic.
    Conductor {
        #[command(subcommand)]
        cmd: ConductorCmd,
    },
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Text,
    Machine,
}

#[derive(Args)]
struct RunArgs {
    /// Path to a `*.audit.json` scenario file.
    scenario: PathBuf,
    /// Run every check as declared, including GRH-conditional ones (default).
    #[arg(long, conflicts_with = "unconditional_only")]
    grh: bool,
    /// Skip GRH-conditional checks (they report SKIP instead of a verdict).
    #[arg(long)]
    unconditional_only: bool,
    /// Report format.
    #[arg(long, value_enum, default_value_t = FormatArg::Text)]
    format: FormatArg,
    /// Override the embedded discriminant-bound table
    /// (lines of `mode degree num den`, `#` comments).
    #[arg(long)]
    odlyzko_table: Option<PathBuf>,
}

#[derive(Args)]
struct HerbrandArgs {
    /// Comma-separated ramification group orders, e.g. `24,12,4,4,4`.
    #[arg(long)]
    orders: String,
    /// Total group order (defaults to the first chain order:
    /// a totally ramified chain).
    #[arg(long)]
    total: Option<u64>,
    /// Lower-numbering argument for φ (a rational, e.g. `4` or `7/2`).
    #[arg(long)]
    at: String,
    /// Residue degree for the discriminant valuation line.
    #[arg(long, default_value_t = 1)]
    residue_degree: u64,
}

#[derive(Args)]
struct OdlyzkoArgs {
    /// Factored root discriminant, e.g. `2:5/2,3:3/2`.
    #[arg(long)]
    delta: String,
    /// `grh` or `unconditional`.
    #[arg(long)]
    mode: String,
    /// Override the embedded bound table.
    #[arg(long)]
    table: Option<PathBuf>,
}

#[derive(Args)]
struct NewformLevelArgs {
    /// Catalogue label, e.g. `32A` (overrides the explicit parameters).
    #[arg(long)]
    label: Option<String>,
    /// Residue characteristic of the level.
    #[arg(long)]
    p: Option<u64>,
    /// Level exponent: the newform has level p^n.
    #[arg(long)]
    n: Option<u32>,
    /// Local type: `irr`, `dec` or `sp`.
    #[arg(long)]
    case: Option<String>,
    /// Conductor exponent of χ (decomposable and special cases).
    #[arg(long)]
    a_chi: Option<u32>,
    /// Conductor exponent of εχ (decomposable case).
    #[arg(long)]
    a_eps_chi: Option<u32>,
}

#[derive(Subcommand)]
enum ModrepCmd {
    /// Exhaustively recomputed facts about a preset group.
    Facts {
        /// One of: c1, c3, s3 (= d3), d4, d5, sh16, a4, a5, gl2f2, gl2f3.
        preset: String,
    },
}

#[derive(Subcommand)]
enum ConductorCmd {
    /// Enumerate admissible (u, t, δ) with 2u + t + δ = c and u + t ≤ g.
    Cases(CasesArgs),
}

#[derive(Args)]
struct CasesArgs {
    /// Conductor exponent to split.
    #[arg(long)]
    c: u32,
    /// Dimension of the abelian variety.
    #[arg(long, default_value_t = 1)]
    g: u32,
    /// Keep only cases with u > 0 (not semistable).
    #[arg(long)]
    require_u_positive: bool,
    /// Keep only cases with δ = 0 (tame torsion action).
    #[arg(long)]
    require_delta_zero: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.cmd {
        Cmd::Run(args) => cmd_run(args),
        Cmd::Herbrand(args) => cmd_herbrand(args).map(|out| {
            print!("{out}");
            0
        }),
        Cmd::Odlyzko(args) => cmd_odlyzko(args).map(|out| {
            print!("{out}");
            0
        }),
        Cmd::NewformLevel(args) => cmd_newform_level(args).map(|out| {
            print!("{out}");
            0
        }),
        Cmd::NewformTable => cmd_newform_table().map(|out| {
            print!("{out}");
            0
        }),
        Cmd::Modrep {
            cmd: ModrepCmd::Facts { preset },
        } => cmd_modrep_facts(&preset).map(|out| {
            print!("{out}");
            0
        }),
        Cmd::Conductor {
            cmd: ConductorCmd::Cases(args),
        } => cmd_conductor_cases(args).map(|out| {
            print!("{out}");
            0
        }),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn load_table(path: &Option<PathBuf>) -> ramaudit::Result<OdlyzkoTable> {
    match path {
        None => Ok(OdlyzkoTable::embedded()),
        Some(p) => {
            let text = std::fs::read_to_string(p).map_err(|e| {
                ramaudit::Error::Invalid(format!("cannot read {}: {e}", p.display()))
            })?;
            OdlyzkoTable::parse(&text)
        }
    }
}

fn cmd_run(args: RunArgs) -> ramaudit::Result<u8> {
    let table = load_table(&args.odlyzko_table)?;
    let scenario = audit::load_scenario(&args.scenario)?;
    let mode = if args.unconditional_only {
        RunMode::UnconditionalOnly
    } else {
        RunMode::AsDeclared
    };
    let results = audit::run_audit(&scenario, mode, &table);
    let format = match args.format {
        FormatArg::Text => audit::ReportFormat::Text,
        FormatArg::Machine => audit::ReportFormat::Machine,
    };
    print!("{}", audit::render_report(&scenario, mode, &results, format));
    Ok(audit::exit_code(&results) as u8)
}

fn parse_orders(s: &str) -> ramaudit::Result<Vec<u64>> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<u64>()
                .map_err(|_| ramaudit::Error::Invalid(format!("bad group order `{t}`")))
        })
        .collect()
}

fn cmd_herbrand(args: HerbrandArgs) -> ramaudit::Result<String> {
    let orders = parse_orders(&args.orders)?;
    let f = match args.total {
        Some(total) => RamFiltration::new(orders, total)?,
        None => RamFiltration::totally_ramified(orders)?,
    };
    let at = parse_rational(&args.at)?;
    let phi = herbrand_phi(&f, &at)?;
    let psi = herbrand_psi(&f, &phi)?;
    let mut out = String::new();
    writeln!(
        out,
        "orders = {:?}  (e = {}, total = {}, i_max = {})",
        f.orders(),
        f.e(),
        f.total_group_order(),
        rational_str(&f.i_max()),
    )
    .unwrap();
    writeln!(out, "phi({}) = {}", rational_str(&at), rational_str(&phi)).unwrap();
    writeln!(out, "psi({}) = {}", rational_str(&phi), rational_str(&psi)).unwrap();
    writeln!(out, "u_max = {}", rational_str(&u_max(&f)?)).unwrap();
    writeln!(
        out,
        "different valuation = {}",
        rational_str(&different_valuation(&f)?)
    )
    .unwrap();
    writeln!(
        out,
        "discriminant valuation (f = {}) = {}",
        args.residue_degree,
        rational_str(&discriminant_valuation(&f, args.residue_degree)?)
    )
    .unwrap();
    Ok(out)
}

fn parse_delta(s: &str) -> ramaudit::Result<FactoredRadical> {
    let mut pairs: Vec<(u64, Rational)> = Vec::new();
    for part in s.split(',') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        let (p, e) = part.split_once(':').ok_or_else(|| {
            ramaudit::Error::Invalid(format!("bad delta component `{part}` (expected p:exp)"))
        })?;
        let prime = p.trim().parse::<u64>().map_err(|_| {
            ramaudit::Error::Invalid(format!("bad prime `{p}` in delta"))
        })?;
        pairs.push((prime, parse_rational(e.trim())?));
    }
    FactoredRadical::from_prime_powers(&pairs)
}

fn cap_line(cap: DegreeCap) -> String {
    match cap {
        DegreeCap::Capped(n) => format!("first excluded degree = {n}"),
        DegreeCap::UnboundedByTable => "first excluded degree = none (beyond the table)".into(),
    }
}

fn cmd_odlyzko(args: OdlyzkoArgs) -> ramaudit::Result<String> {
    let delta = parse_delta(&args.delta)?;
    let mode = BoundMode::parse(&args.mode)?;
    let table = load_table(&args.table)?;
    let approx = radical_approx(&delta, 3)?;
    let cap = table.max_degree(&delta, mode)?;
    let mut out = String::new();
    writeln!(out, "delta = {delta} ~= {}", approx.display).unwrap();
    writeln!(out, "mode = {mode}").unwrap();
    writeln!(out, "{}", cap_line(cap)).unwrap();
    Ok(out)
}

fn record_lines(r: &NewformRecord) -> ramaudit::Result<String> {
    let u = newform_level_of_ram(r)?;
    let cap = level_exponent_bound(&u, true)?;
    let mut out = String::new();
    writeln!(
        out,
        "{}: p = {}, n = {} (level {}), case {}",
        r.label,
        r.p,
        r.n,
        (r.p as u128).pow(r.n),
        r.case
    )
    .unwrap();
    if let (Some(a), Some(b)) = (r.a_chi, r.a_eps_chi) {
        writeln!(out, "character exponents: a(chi) = {a}, a(eps chi) = {b}").unwrap();
    } else if let Some(a) = r.a_chi {
        writeln!(out, "character exponent: a(chi) = {a}").unwrap();
    }
    writeln!(out, "level of ramification u = {}", rational_str(&u)).unwrap();
    writeln!(out, "level exponent bound: n <= 2(u+1) = {cap}").unwrap();
    writeln!(
        out,
        "workable threshold (torsion bound < 42): {}",
        if row_threshold_holds(r)? { "yes" } else { "no" }
    )
    .unwrap();
    Ok(out)
}

fn cmd_newform_level(args: NewformLevelArgs) -> ramaudit::Result<String> {
    if let Some(label) = &args.label {
        let cat = catalogue();
        let r = cat
            .iter()
            .find(|r| r.label.eq_ignore_ascii_case(label))
            .ok_or_else(|| {
                ramaudit::Error::Invalid(format!("no catalogue row labelled `{label}`"))
            })?;
        return record_lines(r);
    }
    let (p, n, case) = match (args.p, args.n, &args.case) {
        (Some(p), Some(n), Some(c)) => (p, n, AutomorphicCase::parse(c)?),
        _ => {
            return Err(ramaudit::Error::Invalid(
                "need either --label or all of --p, --n, --case".into(),
            ))
        }
    };
    let r = NewformRecord {
        label: "custom",
        p,
        n,
        dim: 1,
        nebentypus_exponent: 0,
        case,
        a_chi: args.a_chi,
        a_eps_chi: args.a_eps_chi,
    };
    record_lines(&r)
}

fn cmd_newform_table() -> ramaudit::Result<String> {
    let table = classify_table()?;
    let cat = catalogue();
    let mut out = String::new();
    writeln!(out, "label  p  n  dim  case  u     workable(<42)").unwrap();
    for (r, (label, u)) in cat.iter().zip(table.iter()) {
        debug_assert_eq!(&r.label, label);
        writeln!(
            out,
            "{:<5}  {}  {}  {:>3}  {:<4}  {:<4}  {}",
            r.label,
            r.p,
            r.n,
            r.dim,
            r.case.to_string(),
            rational_str(u),
            if row_threshold_holds(r)? { "yes" } else { "no" }
        )
        .unwrap();
    }
    writeln!(out, "rows: {}", table.len()).unwrap();
    for p in [2u64, 3, 5, 7] {
        let m = max_level_exponent(p)?;
        writeln!(
            out,
            "p = {}: n_max = {} (ell = {}, last admissible level {}, first excluded {})",
            m.p,
            m.n_max,
            m.ell,
            rational_str(&m.last_admissible_level),
            rational_str(&m.first_excluded_level),
        )
        .unwrap();
    }
    writeln!(
        out,
        "survivors (minimal level per prime, workable): {}",
        surviving_newforms()?.join(", ")
    )
    .unwrap();
    Ok(out)
}

fn cmd_modrep_facts(preset: &str) -> ramaudit::Result<String> {
    let g = group_preset(preset)?;
    let mut out = String::new();
    writeln!(out, "group {} (order {})", g.name(), g.order()).unwrap();
    writeln!(out, "abelian: {}", if g.is_abelian() { "yes" } else { "no" }).unwrap();
    let classes = g.conjugacy_data();
    let shown: Vec<String> = classes
        .iter()
        .map(|(size, ord)| format!("{ord}:{size}"))
        .collect();
    writeln!(
        out,
        "conjugacy classes: {} (element order:class size) = {}",
        classes.len(),
        shown.join(", ")
    )
    .unwrap();
    writeln!(out, "normal subgroup orders: {:?}", g.normal_subgroup_orders()).unwrap();
    let (solvable, cyclic) = solvable_subgroup_caps(&g);
    writeln!(
        out,
        "largest solvable subgroup: {solvable}; largest cyclic normal in a solvable subgroup: {cyclic}"
    )
    .unwrap();
    for q in [2u8, 3] {
        match degree_partition(&g, q) {
            Ok(part) => {
                writeln!(out, "irreducible degrees over F{q}: {part:?}").unwrap()
            }
            Err(e) => writeln!(out, "irreducible degrees over F{q}: {e}").unwrap(),
        }
    }
    for q in [2u8, 3] {
        let target = gl2_elements(q)?.len();
        if target < g.order() {
            writeln!(
                out,
                "embeddings into GL2(F{q}): 0 (|GL2(F{q})| = {target} < {})",
                g.order()
            )
            .unwrap();
            continue;
        }
        let rep = embeddings_in_gl2(&g, q)?;
        writeln!(
            out,
            "embeddings into GL2(F{q}): {} up to conjugacy ({} total)",
            rep.count_up_to_conjugacy, rep.count_total
        )
        .unwrap();
        for (ord, traces) in &rep.traces_by_order {
            let t: Vec<String> = traces.iter().map(|x| x.to_string()).collect();
            writeln!(out, "  traces on order-{ord} elements: {{{}}}", t.join(", ")).unwrap();
        }
    }
    Ok(out)
}

fn cmd_conductor_cases(args: CasesArgs) -> ramaudit::Result<String> {
    let constraints = CaseConstraints {
        require_u_positive: args.require_u_positive,
        require_delta_zero: args.require_delta_zero,
    };
    let cases = conductor::enumerate_cases(args.c, args.g, &constraints)?;
    let mut out = String::new();
    writeln!(
        out,
        "admissible (u, t, delta) with 2u + t + delta = {} and u + t <= {}:",
        args.c, args.g
    )
    .unwrap();
    for r in &cases {
        writeln!(
            out,
            "  {}  ->  c = {}",
            conductor::case_label(r),
            rational_str(&r.conductor_exponent())
        )
        .unwrap();
    }
    writeln!(out, "{} case(s)", cases.len()).unwrap();
    Ok(out)
}
