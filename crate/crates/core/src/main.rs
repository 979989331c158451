use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand};

use cdkit::catalog::{builtin_catalog_with, save_group_file, save_report};
use cdkit::cd::{cd_report, property_checks};
use cdkit::classify::recognize;
use cdkit::dot::hasse_dot;
use cdkit::error::Error;
use cdkit::group::Group;
use cdkit::lattice::all_subgroups;
use cdkit::par::Execution;
use cdkit::scan::{scan_catalog, CheckSet};
use cdkit::spec::GroupSpec;

const EXIT_COUNTEREXAMPLE: u8 = 1;
const EXIT_PARSE: u8 = 2;
const EXIT_CONSTRUCTION: u8 = 3;
const EXIT_BUDGET: u8 = 4;

#[derive(Parser)]
#[command(
    name = "cdkit",
    version,
    about = "Chermak-Delgado lattices of small finite groups"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Basic invariants and recognized structure of a group.
    Info { spec: String },
    /// Measures, CD lattice, delta and v of a group.
    Cd {
        spec: String,
        /// Print the JSON report instead of the table.
        #[arg(long)]
        json: bool,
        /// Write the Hasse diagram in Graphviz format.
        #[arg(long, value_name = "PATH")]
        dot: Option<PathBuf>,
    },
    /// Run checks over the built-in catalog.
    Scan {
        #[arg(long, default_value_t = 60)]
        max_order: usize,
        #[arg(long, value_enum, default_value = "all")]
        check: CheckSet,
        /// Worker threads; 1 runs sequentially, 0 uses all cores.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// JSON report destination.
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
    /// Write the catalog manifest as JSON.
    Catalog {
        #[arg(long, default_value_t = 60)]
        max_order: usize,
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
    /// Write a group's Cayley table in the group file format.
    Export { spec: String, path: PathBuf },
}

fn exit_for(e: &Error) -> u8 {
    match e {
        Error::BadSpec(_) | Error::Parse { .. } => EXIT_PARSE,
        Error::CapExceeded { .. } => EXIT_BUDGET,
        _ => EXIT_CONSTRUCTION,
    }
}

fn fail(e: Error) -> ExitCode {
    eprintln!("error: {e}");
    ExitCode::from(exit_for(&e))
}

fn build(spec: &str) -> Result<Group, Error> {
    spec.parse::<GroupSpec>()?.build()
}

fn histogram_text(g: &Group) -> String {
    g.order_histogram()
        .iter()
        .map(|(o, c)| format!("{o}:{c}"))
        .collect::<Vec<_>>()
        .join(" ")
}

fn cmd_info(spec: &str) -> Result<(), Error> {
    let g = build(spec)?;
    println!("group: {}", g.label());
    println!("construction: {}", g.construction().source);
    println!("order: {}", g.order());
    println!("abelian: {}", g.is_abelian());
    println!("nilpotent: {}", g.is_nilpotent());
    println!("center order: {}", g.center().order());
    println!("exponent: {}", g.exponent());
    println!("element orders: {}", histogram_text(&g));
    println!("structure: {}", recognize(&g).kind);
    Ok(())
}

fn cmd_cd(spec: &str, json: bool, dot: Option<PathBuf>) -> Result<(), Error> {
    let g = Arc::new(build(spec)?);
    let lattice = all_subgroups(g)?;
    let report = cd_report(&lattice);
    if let Some(path) = dot {
        std::fs::write(path, hasse_dot(&lattice, &report))?;
    }
    if json {
        let checks = property_checks(&lattice, &report);
        println!(
            "{}",
            serde_json::to_string_pretty(&report.document(&checks))?
        );
        return Ok(());
    }
    println!("{} (order {})", report.label, report.order);
    println!(
        "{:>6} {:>6} {:>10} {:>5} {:>6}",
        "H", "|H|", "m(H)", "CD", "class"
    );
    for (i, h) in lattice.subgroups().iter().enumerate() {
        let rep = if lattice.is_representative(i) {
            "*"
        } else {
            ""
        };
        println!(
            "{:>6} {:>6} {:>10} {:>5} {:>6}",
            format!("H{i}"),
            h.order(),
            report.measures[i].to_string(),
            if report.in_cd[i] { "yes" } else { "no" },
            format!("{}{rep}", lattice.class_of(i)),
        );
    }
    let members: Vec<String> = report.cd_members.iter().map(|i| format!("H{i}")).collect();
    println!("CD members: {}", members.join(" "));
    println!(
        "m* = {}, δ = {}, v = {}",
        report.m_star, report.delta, report.v
    );
    Ok(())
}

fn cmd_scan(max_order: usize, check: CheckSet, jobs: usize, out: Option<PathBuf>) -> ExitCode {
    let exec = Execution::from_jobs(jobs);
    let catalog = match builtin_catalog_with(max_order, exec) {
        Ok(c) => c,
        Err(e) => return fail(e),
    };
    let report = scan_catalog(&catalog, check, exec);
    if let Some(path) = out {
        if let Err(e) = save_report(&path, &report) {
            return fail(e);
        }
    }
    let s = &report.summary;
    println!("groups scanned: {}", s.groups_scanned);
    println!("counterexamples: {}", s.counterexamples);
    println!(
        "exhaustive orders: {}",
        s.orders_exhaustive
            .iter()
            .map(usize::to_string)
            .collect::<Vec<_>>()
            .join(" ")
    );
    if !s.nilpotent_v3.is_empty() {
        println!("nilpotent with v = 3: {}", s.nilpotent_v3.join(" "));
    }
    for f in &s.failures {
        println!(
            "COUNTEREXAMPLE {} {}: {} {:?}",
            f.label, f.check, f.detail, f.witness
        );
    }
    for r in report.groups.iter().filter(|r| r.error.is_some()) {
        println!("BUDGET {}: {}", r.label, r.error.as_deref().unwrap_or(""));
    }
    if s.counterexamples > 0 {
        ExitCode::from(EXIT_COUNTEREXAMPLE)
    } else if s.budget_exhausted > 0 {
        ExitCode::from(EXIT_BUDGET)
    } else {
        ExitCode::SUCCESS
    }
}

fn cmd_catalog(max_order: usize, out: Option<PathBuf>) -> Result<(), Error> {
    let catalog = builtin_catalog_with(max_order, Execution::Parallel { jobs: 0 })?;
    let manifest = catalog.manifest();
    match out {
        Some(path) => save_report(&path, &manifest)?,
        None => println!("{}", serde_json::to_string_pretty(&manifest)?),
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Info { spec } => cmd_info(&spec),
        Command::Cd { spec, json, dot } => cmd_cd(&spec, json, dot),
        Command::Scan {
            max_order,
            check,
            jobs,
            out,
        } => return cmd_scan(max_order, check, jobs, out),
        Command::Catalog { max_order, out } => cmd_catalog(max_order, out),
        Command::Export { spec, path } => build(&spec).and_then(|g| save_group_file(&path, &g)),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => fail(e),
    }
}
