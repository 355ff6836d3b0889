//! `ddk`: catalog inspection, CCT classification, structure searches and
//! counts, orbit counts, invariant reports, surface homology and the
//! verification suite. Every subcommand prints one JSON report on stdout.

use std::io::Write;
use std::path::Path;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use ddk_core::automorphisms::{automorphism_group, orbit_count, Freeness};
use ddk_core::catalog::{catalog, lookup};
use ddk_core::homology::h1_of_surface;
use ddk_core::invariants::fibration_data;
use ddk_core::search::{
    count_structures, enumerate_prestructures, enumerate_structures, z_domain, TupleSet, ZMode,
};
use ddk_core::structures::{
    example_structure_file, k_subgroups, DDKStructure, StructureFile, StructureType,
};
use ddk_core::symplectic::{induced_space, symplectic_structures};
use ddk_core::verify::{sorted_sample, Suite, SuiteOptions, CRITERIA};
use ddk_core::{coset_cap_from_env, parse_presentation, realize, FiniteGroup, Presentation};

#[derive(Parser, Debug)]
#[command(name = "ddk", version, about = "Diagonal double Kodaira structures on finite groups")]
struct Cli {
    /// Worker threads (default: available parallelism).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Inspect the group catalog.
    #[command(subcommand)]
    Catalog(CatalogCommand),
    /// Decide the CCT property.
    Cct(CctArgs),
    /// Enumerate prestructures or structures.
    #[command(subcommand)]
    Search(SearchCommand),
    /// Count structures.
    #[command(subcommand)]
    Count(CountCommand),
    /// Count Aut(G)-orbits of structures of type (2, 2).
    Orbits(OrbitsArgs),
    /// Invariants of the fibration attached to a structure.
    Invariants(InvariantsArgs),
    /// First homology of the surface attached to structures.
    Homology(HomologyArgs),
    /// Run the verification suite.
    VerifyPaper(VerifyArgs),
}

#[derive(Subcommand, Debug)]
enum CatalogCommand {
    List,
    Show { label: String },
}

#[derive(Args, Debug)]
struct CctArgs {
    #[arg(required_unless_present = "all", conflicts_with = "all")]
    label: Option<String>,
    /// Classify every tabulated group.
    #[arg(long)]
    all: bool,
}

#[derive(Subcommand, Debug)]
enum SearchCommand {
    Prestructures {
        label: String,
        /// Search every non-identity z instead of the certified domain.
        #[arg(long)]
        full: bool,
        /// Number of tuples to print.
        #[arg(long, default_value_t = 5)]
        show: usize,
    },
    Structures {
        label: String,
        #[arg(long)]
        b: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        full: bool,
        #[arg(long, default_value_t = 5)]
        show: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Method {
    Backtrack,
    Symplectic,
    Both,
}

#[derive(Subcommand, Debug)]
enum CountCommand {
    Structures {
        label: String,
        #[arg(long, value_enum, default_value_t = Method::Both)]
        method: Method,
        #[arg(long, default_value_t = 2)]
        n: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum FreenessArg {
    Sample,
    Full,
}

#[derive(Args, Debug)]
struct OrbitsArgs {
    label: String,
    #[arg(long, value_enum, default_value_t = FreenessArg::Sample)]
    freeness: FreenessArg,
}

#[derive(Args, Debug)]
struct InvariantsArgs {
    label: String,
    /// Structure file in JSON form.
    #[arg(long, required_unless_present = "example", conflicts_with = "example")]
    structure: Option<String>,
    /// Use the explicit example structure.
    #[arg(long)]
    example: bool,
}

#[derive(Args, Debug)]
struct HomologyArgs {
    label: String,
    #[arg(long, required_unless_present = "samples")]
    structure: Option<String>,
    /// Number of random structures to add.
    #[arg(long)]
    samples: Option<usize>,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Symplectic count plus a verified sample instead of full enumeration.
    #[arg(long)]
    quick: bool,
}

#[derive(Serialize)]
struct RunReport {
    command: String,
    inputs: Value,
    results: Value,
    timing: f64,
    status: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    diagnostic: Option<String>,
}

enum Outcome {
    Count(Value),
    Pass(Value),
    Fail(Value, String),
}

enum CliError {
    /// Bad input: unknown label, unreadable or malformed files.
    Usage(String),
    /// The computation itself failed.
    Failed(String),
}

type CliResult = Result<Outcome, CliError>;

fn failed(e: impl std::fmt::Display) -> CliError {
    CliError::Failed(e.to_string())
}

struct ResolvedGroup {
    label: String,
    group: FiniteGroup,
    presentation: Presentation,
}

/// A catalog label or alias, or a path to a presentation file.
fn resolve_group(key: &str) -> Result<ResolvedGroup, CliError> {
    if let Some(e) = lookup(key) {
        let group = e.realize().map_err(failed)?;
        return Ok(ResolvedGroup {
            label: e.display_name().to_string(),
            group,
            presentation: e.presentation(),
        });
    }
    if Path::new(key).is_file() {
        let text = std::fs::read_to_string(key).map_err(|e| CliError::Usage(format!("{key}: {e}")))?;
        let presentation = parse_presentation(&text).map_err(|e| CliError::Usage(format!("{key}: {e}")))?;
        let group = realize(&presentation, coset_cap_from_env()).map_err(failed)?;
        return Ok(ResolvedGroup {
            label: key.to_string(),
            group,
            presentation,
        });
    }
    Err(CliError::Usage(format!("unknown label {key}")))
}

fn read_structure_file(path: &str) -> Result<StructureFile, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{path}: {e}")))?;
    serde_json::from_str(&text)
        .map_err(|e| CliError::Usage(format!("malformed structure file {path}: {e}")))
}

fn load_structure<'g>(rg: &'g ResolvedGroup, file: &StructureFile) -> Result<DDKStructure<'g>, CliError> {
    if lookup(&file.group).map(|e| e.display_name()) != lookup(&rg.label).map(|e| e.display_name())
        && file.group != rg.label
    {
        eprintln!("warning: structure file names group {}, using {}", file.group, rg.label);
    }
    let stype = file.stype().map_err(|e| CliError::Usage(e.to_string()))?;
    let tuple = file.resolve(&rg.group).map_err(|e| CliError::Usage(e.to_string()))?;
    DDKStructure::new(&rg.group, tuple, stype).map_err(failed)
}

fn z_mode(full: bool) -> ZMode {
    if full {
        ZMode::Full
    } else {
        ZMode::Auto
    }
}

fn tuple_files(label: &str, g: &FiniteGroup, set: &TupleSet, show: usize, stype: StructureType) -> Value {
    let mut out = Vec::new();
    for t in set.iter().take(show) {
        match DDKStructure::new(g, t.clone(), stype) {
            Ok(s) => out.push(json!(StructureFile::from_structure(label, &s))),
            Err(_) => out.push(json!(t)),
        }
    }
    json!(out)
}

/// Every structure of type (2, 2): the symplectic construction on
/// extra-special groups of order 32, backtracking otherwise.
fn all_structures(g: &FiniteGroup) -> Result<TupleSet, CliError> {
    if induced_space(g).is_ok() && g.order() == 32 {
        return symplectic_structures(g).map_err(failed);
    }
    enumerate_structures(g, StructureType { b: 2, n: 2 }, ZMode::Auto, None).map_err(failed)
}

fn cmd_catalog(c: &CatalogCommand) -> CliResult {
    match c {
        CatalogCommand::List => {
            let rows: Vec<Value> = catalog()
                .iter()
                .map(|e| {
                    json!({
                        "label": e.label,
                        "name": e.display_name(),
                        "aliases": e.aliases,
                        "order": e.order,
                        "tabulated": e.tabulated,
                        "description": e.description,
                    })
                })
                .collect();
            Ok(Outcome::Count(json!({ "entries": rows.len(), "groups": rows })))
        }
        CatalogCommand::Show { label } => {
            let rg = resolve_group(label)?;
            let g = &rg.group;
            let center = g.center();
            let cct = if g.is_abelian() { None } else { g.is_cct().ok() };
            Ok(Outcome::Count(json!({
                "label": rg.label,
                "order": g.order(),
                "presentation": rg.presentation.to_text(),
                "abelian": g.is_abelian(),
                "center_order": center.len(),
                "derived_order": g.derived_subgroup().len(),
                "exponent": g.exponent(),
                "nilpotency_class": g.nilpotency_class(),
                "monolithic": g.is_monolithic().ok(),
                "cct": cct,
            })))
        }
    }
}

fn cmd_cct(a: &CctArgs) -> CliResult {
    let classify = |rg: &ResolvedGroup| -> Result<Value, CliError> {
        let cct = if rg.group.is_abelian() {
            Value::Null
        } else {
            json!(rg.group.is_cct().map_err(failed)?)
        };
        Ok(json!({"label": rg.label, "order": rg.group.order(), "cct": cct}))
    };
    if a.all {
        let mut rows = Vec::new();
        let mut non_cct = Vec::new();
        for e in catalog().into_iter().filter(|e| e.tabulated) {
            let rg = resolve_group(e.label)?;
            let row = classify(&rg)?;
            if row["cct"] == json!(false) {
                non_cct.push(rg.label.clone());
            }
            rows.push(row);
        }
        return Ok(Outcome::Count(json!({"groups": rows, "non_cct": non_cct})));
    }
    let rg = resolve_group(a.label.as_deref().unwrap_or_default())?;
    Ok(Outcome::Count(classify(&rg)?))
}

fn cmd_search(c: &SearchCommand) -> CliResult {
    match c {
        SearchCommand::Prestructures { label, full, show } => {
            let rg = resolve_group(label)?;
            let g = &rg.group;
            let mode = z_mode(*full);
            let domain = z_domain(g, mode).map_err(failed)?;
            let set = enumerate_prestructures(g, mode, None).map_err(failed)?;
            let first: Vec<Vec<usize>> = set.iter().take(*show).collect();
            Ok(Outcome::Count(json!({
                "label": rg.label,
                "mode": format!("{mode:?}").to_lowercase(),
                "z_domain": domain.elements,
                "certificates": domain.certificates.len(),
                "count": set.len(),
                "first": first,
            })))
        }
        SearchCommand::Structures { label, b, n, full, show } => {
            let rg = resolve_group(label)?;
            let g = &rg.group;
            let stype = StructureType::new(*b, *n).map_err(|e| CliError::Usage(e.to_string()))?;
            let mode = z_mode(*full);
            let set = enumerate_structures(g, stype, mode, None).map_err(failed)?;
            Ok(Outcome::Count(json!({
                "label": rg.label,
                "b": b,
                "n": n,
                "mode": format!("{mode:?}").to_lowercase(),
                "count": set.len(),
                "first": tuple_files(&rg.label, g, &set, *show, stype),
            })))
        }
    }
}

fn cmd_count(c: &CountCommand) -> CliResult {
    let CountCommand::Structures { label, method, n } = c;
    let rg = resolve_group(label)?;
    let g = &rg.group;
    let stype = StructureType::new(2, *n).map_err(|e| CliError::Usage(e.to_string()))?;
    let mut results = json!({"label": rg.label, "b": 2, "n": n});
    let mut counts = Vec::new();
    if matches!(method, Method::Backtrack | Method::Both) {
        let c = count_structures(g, stype, ZMode::Auto).map_err(failed)?;
        results["backtrack"] = json!(c);
        counts.push(c);
    }
    if matches!(method, Method::Symplectic | Method::Both) {
        if *n != 2 {
            return Err(CliError::Failed("the symplectic count covers type (2, 2) only".into()));
        }
        let c = symplectic_structures(g).map_err(failed)?.len() as u64;
        results["symplectic"] = json!(c);
        counts.push(c);
    }
    if *method == Method::Both {
        let agree = counts[0] == counts[1];
        results["agree"] = json!(agree);
        if !agree {
            return Ok(Outcome::Fail(results, "backtracking and symplectic counts differ".into()));
        }
        return Ok(Outcome::Pass(results));
    }
    Ok(Outcome::Count(results))
}

fn cmd_orbits(a: &OrbitsArgs) -> CliResult {
    let rg = resolve_group(&a.label)?;
    let g = &rg.group;
    let set = all_structures(g)?;
    let auts = automorphism_group(g, &rg.presentation).map_err(failed)?;
    let freeness = match a.freeness {
        FreenessArg::Sample => Freeness::default(),
        FreenessArg::Full => Freeness::All,
    };
    let r = orbit_count(&set, &auts, freeness).map_err(failed)?;
    Ok(Outcome::Count(json!({
        "label": rg.label,
        "structures": r.structures,
        "automorphisms": r.automorphisms,
        "orbits": r.orbits,
        "freeness_checked": r.freeness_checked,
    })))
}

fn cmd_invariants(a: &InvariantsArgs) -> CliResult {
    let rg = resolve_group(&a.label)?;
    let file = match &a.structure {
        Some(path) => read_structure_file(path)?,
        None => example_structure_file(&rg.label),
    };
    let s = load_structure(&rg, &file)?;
    let mut report = fibration_data(&s).map_err(failed)?;
    if k_subgroups(&s).strong {
        let h = h1_of_surface(&s).map_err(failed)?;
        report = report
            .with_first_betti(h.invariants.free_rank as u64)
            .map_err(failed)?;
    }
    Ok(Outcome::Count(json!({
        "label": rg.label,
        "structure": s.elements(),
        "report": report,
    })))
}

fn cmd_homology(a: &HomologyArgs) -> CliResult {
    let rg = resolve_group(&a.label)?;
    let g = &rg.group;
    let describe = |s: &DDKStructure<'_>| -> Result<Value, CliError> {
        let h = h1_of_surface(s).map_err(failed)?;
        Ok(json!({
            "structure": s.elements(),
            "free_rank": h.invariants.free_rank,
            "torsion": h.invariants.torsion,
            "maximal": h.maximal,
        }))
    };
    let mut rows = Vec::new();
    if let Some(path) = &a.structure {
        let file = read_structure_file(path)?;
        rows.push(describe(&load_structure(&rg, &file)?)?);
    }
    if let Some(k) = a.samples {
        let set = all_structures(g)?;
        if set.is_empty() {
            return Err(CliError::Failed(format!("{} has no structures of type (2, 2)", rg.label)));
        }
        for i in sorted_sample(set.len(), k, 0x5eed) {
            let s = DDKStructure::new(g, set.get(i), StructureType { b: 2, n: 2 }).map_err(failed)?;
            rows.push(describe(&s)?);
        }
    }
    Ok(Outcome::Count(json!({"label": rg.label, "homology": rows})))
}

fn cmd_verify(a: &VerifyArgs) -> CliResult {
    let mut suite = Suite::new(SuiteOptions { quick: a.quick });
    let mut outcomes = Vec::new();
    eprintln!("{:<3} {:<6} {:>9}  claim", "id", "status", "seconds");
    for id in 1..=CRITERIA {
        let t = Instant::now();
        let o = suite.run(id);
        eprintln!(
            "{:<3} {:<6} {:>9.2}  {}",
            id,
            if o.passed { "pass" } else { "FAIL" },
            t.elapsed().as_secs_f64(),
            o.claim
        );
        if let Some(d) = &o.diagnostic {
            eprintln!("    {d}");
        }
        outcomes.push(o);
    }
    let failed_ids: Vec<u8> = outcomes.iter().filter(|o| !o.passed).map(|o| o.id).collect();
    let results = json!({
        "mode": if a.quick { "quick" } else { "full" },
        "criteria": outcomes,
    });
    if failed_ids.is_empty() {
        Ok(Outcome::Pass(results))
    } else {
        Ok(Outcome::Fail(results, format!("failed criteria {failed_ids:?}")))
    }
}

fn describe(cli: &Cli) -> (String, Value) {
    let (name, inputs) = match &cli.command {
        Command::Catalog(CatalogCommand::List) => ("catalog list", json!({})),
        Command::Catalog(CatalogCommand::Show { label }) => ("catalog show", json!({"label": label})),
        Command::Cct(a) => ("cct", json!({"label": a.label, "all": a.all})),
        Command::Search(SearchCommand::Prestructures { label, full, show }) => (
            "search prestructures",
            json!({"label": label, "full": full, "show": show}),
        ),
        Command::Search(SearchCommand::Structures { label, b, n, full, show }) => (
            "search structures",
            json!({"label": label, "b": b, "n": n, "full": full, "show": show}),
        ),
        Command::Count(CountCommand::Structures { label, method, n }) => (
            "count structures",
            json!({"label": label, "method": format!("{method:?}").to_lowercase(), "n": n}),
        ),
        Command::Orbits(a) => (
            "orbits",
            json!({"label": a.label, "freeness": format!("{:?}", a.freeness).to_lowercase()}),
        ),
        Command::Invariants(a) => (
            "invariants",
            json!({"label": a.label, "structure": a.structure, "example": a.example}),
        ),
        Command::Homology(a) => (
            "homology",
            json!({"label": a.label, "structure": a.structure, "samples": a.samples}),
        ),
        Command::VerifyPaper(a) => ("verify-paper", json!({"quick": a.quick})),
    };
    (name.to_string(), inputs)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if jobs == 0 {
            eprintln!("error: --jobs must be positive");
            return ExitCode::from(2);
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let (command, inputs) = describe(&cli);
    let start = Instant::now();
    let result = match &cli.command {
        Command::Catalog(c) => cmd_catalog(c),
        Command::Cct(a) => cmd_cct(a),
        Command::Search(c) => cmd_search(c),
        Command::Count(c) => cmd_count(c),
        Command::Orbits(a) => cmd_orbits(a),
        Command::Invariants(a) => cmd_invariants(a),
        Command::Homology(a) => cmd_homology(a),
        Command::VerifyPaper(a) => cmd_verify(a),
    };
    let timing = start.elapsed().as_secs_f64();
    let (status, results, diagnostic, code) = match result {
        Ok(Outcome::Count(v)) => ("count", v, None, 0),
        Ok(Outcome::Pass(v)) => ("pass", v, None, 0),
        Ok(Outcome::Fail(v, d)) => ("fail", v, Some(d), 1),
        Err(CliError::Failed(d)) => ("fail", Value::Null, Some(d), 1),
        Err(CliError::Usage(d)) => {
            eprintln!("error: {d}");
            return ExitCode::from(2);
        }
    };
    if let Some(d) = &diagnostic {
        eprintln!("{d}");
    }
    let report = RunReport {
        command,
        inputs,
        results,
        timing,
        status,
        diagnostic,
    };
    match serde_json::to_string_pretty(&report) {
        Ok(s) => {
            let _ = writeln!(std::io::stdout().lock(), "{s}");
        }
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }
    ExitCode::from(code)
}
