//! `fusion-realize`: batch driver for realizing fusion systems.
//!
//! Exit status is 0 when every verification passes, 1 when one fails and
//! 2 on bad input.

mod input;
mod report;

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use fusion_core::biset::{ClassList, Stabilizer};
use fusion_core::catalog;
use fusion_core::fusion::{FusionSystem, ProductFusion};
use fusion_core::group::{all_subgroups, DirectSquare};
use fusion_core::realization::{build_semichar, rank_and_order, verify_realization, RealizationReport};
use rand::rngs::StdRng;
use rand::SeedableRng;

use report::{render_text, table_header, table_row, ReportJson};

#[derive(Debug)]
pub enum CliError {
    Input(String),
    Failed(String),
}

impl From<fusion_core::Error> for CliError {
    fn from(e: fusion_core::Error) -> Self {
        CliError::Failed(e.to_string())
    }
}

#[derive(Parser)]
#[command(name = "fusion-realize", version, about = "Realize fusion systems on finite p-groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct InputArgs {
    /// Cayley table file
    #[arg(long)]
    group: Option<PathBuf>,
    /// Fusion generator file; omit for the inner fusion system
    #[arg(long)]
    fusion: Option<PathBuf>,
    /// Built-in catalog entry
    #[arg(long)]
    catalog: Option<String>,
}

#[derive(Args, Clone)]
struct OutputArgs {
    /// Write a machine-readable report here
    #[arg(long)]
    json: Option<PathBuf>,
    /// Write the text report here instead of standard output
    #[arg(long)]
    report: Option<PathBuf>,
    /// Size bound for explicit intertwiner search
    #[arg(long, default_value_t = fusion_core::realization::DEFAULT_INTERTWINER_BOUND)]
    max_explicit: usize,
}

#[derive(Subcommand)]
enum Command {
    /// List all subgroups with their conjugacy classes
    Subgroups {
        #[command(flatten)]
        input: InputArgs,
    },
    /// Close a fusion system and summarize it
    Close {
        #[command(flatten)]
        input: InputArgs,
    },
    /// Build the stabilized biset
    Build {
        #[command(flatten)]
        input: InputArgs,
        /// Also run randomized checks of the stabilization step
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Run the full realization check
    Realize {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Run the realization check over the built-in catalog
    Catalog {
        /// Run every entry
        #[arg(long)]
        all: bool,
        /// Run a single entry
        #[arg(long)]
        catalog: Option<String>,
        #[command(flatten)]
        output: OutputArgs,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Failed(msg)) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn load(input: &InputArgs) -> Result<(String, FusionSystem), CliError> {
    input::load(input.group.as_deref(), input.fusion.as_deref(), input.catalog.as_deref())
}

fn write(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn emit(output: &OutputArgs, text: &str, json: impl serde::Serialize) -> Result<(), CliError> {
    match &output.report {
        Some(path) => write(path, text)?,
        None => print!("{text}"),
    }
    if let Some(path) = &output.json {
        let mut doc = serde_json::to_string_pretty(&json).expect("report serializes");
        doc.push('\n');
        write(path, &doc)?;
    }
    Ok(())
}

fn passed(r: &RealizationReport) -> bool {
    r.flags.all_pass() && r.intertwiner_agreement != Some(false)
}

fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::Subgroups { input } => {
            if input.fusion.is_some() {
                return Err(CliError::Input("subgroups takes no fusion file".into()));
            }
            let (_, group) = input::load_group(input.group.as_deref(), input.catalog.as_deref())?;
            print!("{}", subgroups_text(&group));
            Ok(())
        }
        Command::Close { input } => {
            let (label, f) = load(&input)?;
            print!("{}", close_text(&label, &f));
            Ok(())
        }
        Command::Build { input, seed } => {
            let (label, f) = load(&input)?;
            print!("{}", build_text(&label, &f)?);
            if let Some(seed) = seed {
                let (ok, total) = random_stabilize_checks(&f, seed, 100)?;
                println!("random stabilization checks: {ok}/{total} passed");
                if ok != total {
                    return Err(CliError::Failed("stabilization postconditions".into()));
                }
            }
            Ok(())
        }
        Command::Realize { input, output } => {
            let (label, f) = load(&input)?;
            let r = verify_realization(&f, output.max_explicit)?;
            emit(&output, &render_text(&label, &r), ReportJson::new(&label, &r))?;
            if passed(&r) {
                Ok(())
            } else {
                Err(CliError::Failed(format!("{label}: a verification flag is false")))
            }
        }
        Command::Catalog { all, catalog: name, output } => {
            let entries: Vec<_> = match (all, name) {
                (true, None) => catalog::catalog(),
                (false, Some(n)) => vec![catalog::lookup(&n).map_err(|e| CliError::Input(e.to_string()))?],
                _ => return Err(CliError::Input("give exactly one of --all or --catalog".into())),
            };
            let mut text = table_header();
            text.push('\n');
            let mut docs = Vec::new();
            let mut failures = Vec::new();
            for e in entries {
                let f = e.fusion_system()?;
                let r = verify_realization(&f, output.max_explicit)?;
                text.push_str(&table_row(e.name, &r));
                text.push('\n');
                if !passed(&r) {
                    failures.push(e.name);
                }
                docs.push(ReportJson::new(e.name, &r));
            }
            let _ = writeln!(text, "{} entries, {} failed", docs.len(), failures.len());
            emit(&output, &text, docs)?;
            if failures.is_empty() {
                Ok(())
            } else {
                Err(CliError::Failed(format!("entries {}", failures.join(", "))))
            }
        }
    }
}

fn elems(xs: &[usize]) -> String {
    let parts: Vec<String> = xs.iter().map(usize::to_string).collect();
    format!("{{{}}}", parts.join(","))
}

fn subgroups_text(group: &fusion_core::group::FiniteGroup) -> String {
    let lattice = all_subgroups(group);
    let mut out = format!(
        "order {}: {} subgroups in {} conjugacy classes\n",
        group.order(),
        lattice.len(),
        lattice.classes().len()
    );
    for (i, sub) in lattice.subgroups().iter().enumerate() {
        let _ = writeln!(
            out,
            "{i}: order {} class {} normalizer {} {}",
            sub.order(),
            lattice.class_of(i),
            lattice.normalizer_order(i),
            elems(sub.elements())
        );
    }
    out
}

fn close_text(label: &str, f: &FusionSystem) -> String {
    let lattice = f.lattice();
    let mut out = format!(
        "{label}: order {}, {} subgroups, {} morphisms, outer automorphisms {}\n",
        f.base().order(),
        lattice.len(),
        f.morphism_count(),
        f.out_reps().len()
    );
    out.push_str("hom-set sizes (row P, column Q):\n");
    for row in f.hom_set_sizes() {
        let cells: Vec<String> = row.iter().map(usize::to_string).collect();
        let _ = writeln!(out, "  {}", cells.join(" "));
    }
    out.push_str("fusion classes:\n");
    for class in f.f_classes() {
        let members: Vec<String> = class.iter().map(|&i| elems(lattice.get(i).elements())).collect();
        let _ = writeln!(out, "  {}", members.join(" "));
    }
    out
}

fn build_text(label: &str, f: &FusionSystem) -> Result<String, CliError> {
    let b = build_semichar(f)?;
    let (r, order) = rank_and_order(&b)?;
    let sq = b.square();
    let mut out = format!("{label}: m = {}, |X| = {}, r = {r}, |G| = {order}\n", b.m(), b.cardinality());
    for (name, v) in [("Y0", b.y0()), ("Y", b.y()), ("X", b.x())] {
        let _ = writeln!(out, "{name}:");
        for line in v.render(sq).lines() {
            let _ = writeln!(out, "  {line}");
        }
    }
    Ok(out)
}

/// Runs the stabilization step on random admissible starts and checks its
/// postconditions. Returns `(passed, total)`.
fn random_stabilize_checks(f: &FusionSystem, seed: u64, count: usize) -> Result<(usize, usize), CliError> {
    let sq = DirectSquare::new(f.base().clone());
    let classes = ClassList::twisted_diagonals(&sq, f.lattice());
    let oracle = ProductFusion::new(f, &sq);
    let s = f.base().order();
    let st = Stabilizer::new(&classes, &oracle, |d| sq.project_right(d).order() < s)?;
    let mut rng = StdRng::seed_from_u64(seed);
    let mut ok = 0;
    for _ in 0..count {
        let x0 = st.random_admissible(&mut rng);
        let x = st.run(&x0)?;
        if st.check_postconditions(&x0, &x).is_ok() {
            ok += 1;
        }
    }
    Ok((ok, count))
}
