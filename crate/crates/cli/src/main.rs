//! Command-line surface: enumerate antichains, compute characteristic
//! polynomials, and run the verification suite.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage error,
//! 3 resource guard tripped.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::{Parser, Subcommand, ValueEnum};

use rootcomb::arrangements::{
    build_arrangement, char_poly_with, semi_shi_conjecture_report, zaslavsky_counts,
    ArrangementKind, EngineOptions,
};
use rootcomb::posets::{enumerate_antichains, AntichainFilter};
use rootcomb::rootsys::{build_root_system, RootSystem, SystemId};
use rootcomb::verify::{run_suite, Scope, Status, SuiteOptions, VerificationReport};
use rootcomb::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Parser)]
#[command(name = "rootcomb", version, about = "Exact root-system combinatorics")]
struct Cli {
    /// Reserved: the tool has no randomness anywhere; passing the flag is an error.
    #[arg(long, global = true)]
    seed_free: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate antichains of a root system in canonical order.
    Enumerate {
        /// System label like C3 or F4.
        system: String,
        /// all | short | long | strictly-positive | strictly-s-positive | ss | covers
        #[arg(long, default_value = "all")]
        filter: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Characteristic polynomial of a deformed Coxeter arrangement.
    Charpoly {
        /// System label like C2.
        system: String,
        /// coxeter | cat | cat-s | shi | shi-s
        kind: String,
        /// Level parameter (0 for coxeter).
        m: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        /// Rank guard for the finite-field engine.
        #[arg(long, default_value_t = 5)]
        max_rank: usize,
        /// Guard on the level parameter.
        #[arg(long, default_value_t = 4)]
        max_m: usize,
    },
    /// Run the verification suite and emit a machine-readable report.
    Verify {
        /// Comma-separated system labels to restrict to (e.g. C2,G2).
        #[arg(long)]
        systems: Option<String>,
        /// all | counting | headline | bijections | charpoly | regions |
        /// lattice | semi-shi | affine | duality | cp
        #[arg(long, default_value = "all")]
        scope: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        /// Also write the JSON report to this path.
        #[arg(long)]
        out: Option<String>,
        /// Soft wall-clock budget in seconds; sections that would start
        /// after it is spent are recorded as failures, loudly.
        #[arg(long)]
        time_budget: Option<u64>,
    },
}

fn load_system(label: &str) -> Result<RootSystem, Error> {
    let id = SystemId::parse(label)?;
    build_root_system(id.letter, id.rank)
}

/// Usage errors exit 2, resource guards exit 3, anything else exits 1.
fn exit_for(err: &Error) -> u8 {
    match err {
        Error::InvalidSystem { .. }
        | Error::InvalidArgument { .. }
        | Error::SimplyLaced { .. }
        | Error::NotARoot { .. } => 2,
        Error::RankGuard { .. } | Error::LevelGuard { .. } => 3,
        _ => 1,
    }
}

fn cmd_enumerate(system: &str, filter: &str, format: Format) -> Result<(), Error> {
    let rs = load_system(system)?;
    let filter = AntichainFilter::parse(filter)?;
    let list = enumerate_antichains(&rs, filter)?;
    match format {
        Format::Json => {
            let rows: Vec<serde_json::Value> = list.iter().map(|a| a.to_json(&rs)).collect();
            let doc = serde_json::json!({
                "system": rs.id().to_string(),
                "count": list.len(),
                "antichains": rows,
            });
            println!("{}", serde_json::to_string_pretty(&doc).expect("json"));
        }
        Format::Text => {
            for a in &list {
                let parts: Vec<String> = a
                    .coeff_vectors(&rs)
                    .iter()
                    .map(|v| {
                        let inner: Vec<String> = v.iter().map(|c| c.to_string()).collect();
                        format!("({})", inner.join(","))
                    })
                    .collect();
                println!("{{{}}}", parts.join(", "));
            }
            println!("count: {}", list.len());
        }
    }
    Ok(())
}

fn cmd_charpoly(
    system: &str,
    kind: &str,
    m: usize,
    format: Format,
    max_rank: usize,
    max_m: usize,
) -> Result<(), Error> {
    let rs = load_system(system)?;
    let kind = ArrangementKind::parse(kind)?;
    if m > max_m {
        return Err(Error::LevelGuard { m, max: max_m });
    }
    let arr = build_arrangement(&rs, kind, m)?;
    let start = Instant::now();
    let chi = char_poly_with(&rs, &arr, &EngineOptions { max_rank })?;
    let counts = zaslavsky_counts(&chi, rs.rank());
    let conjecture = if kind == ArrangementKind::SemiShi {
        Some(semi_shi_conjecture_report(&rs, m)?)
    } else {
        None
    };
    let runtime_ms = start.elapsed().as_millis();
    match format {
        Format::Json => {
            let mut doc = serde_json::json!({
                "system": rs.id().to_string(),
                "kind": kind.label(),
                "m": m,
                "chi": chi.coeffs,
                "factored": chi.factored_string(),
                "regions": counts.regions,
                "bounded": counts.bounded,
                "timings": { "total_ms": runtime_ms },
            });
            if let Some(rep) = &conjecture {
                doc["predicted"] = serde_json::json!(rep.conjectured.coeffs);
                doc["verdict"] = serde_json::json!(if rep.matches { "matches" } else { "differs" });
            }
            println!("{}", serde_json::to_string_pretty(&doc).expect("json"));
        }
        Format::Text => {
            println!("system: {}", rs.id());
            println!("kind: {} m={m}", kind.label());
            println!("chi: {chi}");
            println!("coefficients: {:?}", chi.coeffs);
            println!("regions: {}", counts.regions);
            println!("bounded: {}", counts.bounded);
            if let Some(rep) = &conjecture {
                println!("conjecture: {}", rep.conjectured);
                println!(
                    "verdict: {}",
                    if rep.matches { "matches" } else { "differs" }
                );
            }
        }
    }
    Ok(())
}

fn parse_systems(arg: Option<&str>) -> Result<Option<Vec<SystemId>>, Error> {
    match arg {
        None => Ok(None),
        Some(list) => {
            let mut out = Vec::new();
            for part in list.split(',').filter(|p| !p.is_empty()) {
                out.push(SystemId::parse(part.trim())?);
            }
            Ok(Some(out))
        }
    }
}

fn cmd_verify(
    systems: Option<&str>,
    scope: &str,
    format: Format,
    out: Option<&str>,
    time_budget: Option<u64>,
) -> Result<bool, Error> {
    let systems = parse_systems(systems)?;
    let scope = Scope::parse(scope)?;
    let report = match (scope, time_budget) {
        // With a budget, run section by section so the cutoff is loud.
        (Scope::All, Some(secs)) => {
            let budget = Duration::from_secs(secs);
            let start = Instant::now();
            let sections = [
                Scope::Counting,
                Scope::Headline,
                Scope::Bijections,
                Scope::CharPoly,
                Scope::Regions,
                Scope::LatticePoints,
                Scope::SemiShi,
                Scope::Affine,
                Scope::Duality,
                Scope::CpRefinements,
            ];
            let mut checks = Vec::new();
            for section in sections {
                if start.elapsed() > budget {
                    checks.push(rootcomb::verify::CheckRecord {
                        id: format!("budget/{}", section.label()),
                        anchor: "time-budget".to_string(),
                        system: "-".to_string(),
                        expected: "section executed".to_string(),
                        computed: format!("skipped: budget of {secs}s exhausted"),
                        status: Status::Fail,
                        runtime_ms: 0,
                    });
                    continue;
                }
                let rep = run_suite(SuiteOptions {
                    scope: section,
                    systems: systems.clone(),
                });
                checks.extend(rep.checks);
            }
            let summary = rootcomb::verify::Summary {
                pass: checks.iter().filter(|c| c.status == Status::Pass).count(),
                fail: checks.iter().filter(|c| c.status == Status::Fail).count(),
                report_only: checks
                    .iter()
                    .filter(|c| c.status == Status::ReportOnly)
                    .count(),
            };
            VerificationReport {
                schema_version: 1,
                scope: "all".to_string(),
                checks,
                summary,
            }
        }
        _ => run_suite(SuiteOptions { scope, systems }),
    };
    let json = serde_json::to_string_pretty(&report).expect("json");
    if let Some(path) = out {
        std::fs::write(path, &json)
            .map_err(|e| Error::invalid(format!("cannot write report to {path}: {e}")))?;
    }
    match format {
        Format::Json => println!("{json}"),
        Format::Text => {
            for c in &report.checks {
                let tag = match c.status {
                    Status::Pass => "PASS",
                    Status::Fail => "FAIL",
                    Status::ReportOnly => "NOTE",
                };
                println!(
                    "{tag} {} [{}] expected: {} | computed: {} ({} ms)",
                    c.id, c.system, c.expected, c.computed, c.runtime_ms
                );
            }
            println!(
                "summary: pass={} fail={} report-only={}",
                report.summary.pass, report.summary.fail, report.summary.report_only
            );
        }
    }
    Ok(report.failed())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.seed_free {
        eprintln!("--seed-free is reserved: there is no randomness to disable");
        return ExitCode::from(2);
    }
    let outcome = match &cli.command {
        Command::Enumerate {
            system,
            filter,
            format,
        } => cmd_enumerate(system, filter, *format).map(|()| false),
        Command::Charpoly {
            system,
            kind,
            m,
            format,
            max_rank,
            max_m,
        } => cmd_charpoly(system, kind, *m, *format, *max_rank, *max_m).map(|()| false),
        Command::Verify {
            systems,
            scope,
            format,
            out,
            time_budget,
        } => cmd_verify(
            systems.as_deref(),
            scope,
            *format,
            out.as_deref(),
            *time_budget,
        ),
    };
    match outcome {
        Ok(false) => ExitCode::SUCCESS,
        Ok(true) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_for(&e))
        }
    }
}
