//! `arlab` — command-line front end for the anti-Ramsey linear-forest lab.
//!
//! Exit codes: `0` for a definitive answer (including "no rainbow copy" and
//! a failed formula domain check), `1` for usage errors, I/O problems, or a
//! failed crosscheck suite, `2` for searches that hit their node budget
//! before reaching a definitive answer.

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use arlab_core::catalog::FormulaFamily;
use arlab_core::constructions;
use arlab_core::crosscheck;
use arlab_core::detector::{find_rainbow_forest, DetectorOptions};
use arlab_core::exec::{self, Parallelism};
use arlab_core::finder::{class_threshold, find_constructive, FinderOptions, LevelReport};
use arlab_core::io::{self, ColoringFormat};
use arlab_core::model::{EdgeColoring, ForestShape, RainbowWitness};
use arlab_core::oracle::{compute_ar, compute_ar_triangle, ARResult, ARStatus, OracleConfig};

#[derive(Parser)]
#[command(
    name = "arlab",
    version,
    about = "Anti-Ramsey laboratory for linear forests kP3 + tP2",
    propagate_version = true
)]
struct Cli {
    /// Worker threads for the parallel kernels; 0 keeps the library default.
    /// The ARLAB_THREADS environment variable, when set, takes precedence.
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,

    /// Force the sequential kernels even where parallel ones exist.
    #[arg(long, global = true)]
    sequential: bool,

    /// Emit machine-readable JSON instead of aligned text.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a closed-form anti-Ramsey value from the catalog.
    Formula(FormulaArgs),
    /// Build the spanning-case extremal coloring (one class short of forcing
    /// a rainbow spanning forest).
    Construct(ConstructArgs),
    /// Search a coloring of K_n for a rainbow copy of kP3 + tP2.
    Detect(DetectArgs),
    /// Extract a guaranteed spanning rainbow forest from a coloring at or
    /// above the class threshold, reporting how each level was completed.
    Find(FindArgs),
    /// Compute AR(n, .) exactly by exhaustive search over colorings (small n).
    Oracle(OracleArgs),
    /// Run a cross-validation suite over the independent implementations.
    Crosscheck(CrosscheckArgs),
}

#[derive(Args)]
struct FormulaArgs {
    /// Family tag, e.g. SPANNING_KP3_TP2, MATCHING, P3_TP2, CYCLE.
    #[arg(long)]
    family: String,
    /// Comma-separated key=value parameters, e.g. "k=2,t=3" or
    /// "n=30,paths=4+2".
    #[arg(long, default_value = "")]
    params: String,
}

#[derive(Args)]
struct ConstructArgs {
    #[arg(long)]
    k: usize,
    #[arg(long)]
    t: usize,
    /// Write the coloring here instead of printing it to stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// On-disk format for --out (ignored otherwise; stdout honors --json).
    #[arg(long, value_enum, default_value_t = FileFormat::Json)]
    format: FileFormat,
}

#[derive(Clone, Copy, ValueEnum)]
enum FileFormat {
    Json,
    Text,
}

#[derive(Args)]
struct DetectArgs {
    /// Coloring file (JSON or two-line text format).
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    k: usize,
    #[arg(long)]
    t: usize,
    /// Node budget; exceeding it exits with code 2.
    #[arg(long)]
    budget: Option<u64>,
}

#[derive(Args)]
struct FindArgs {
    /// Coloring file; must be a spanning host (n = 3k + 2t) with at least
    /// the threshold number of classes.
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    k: usize,
    #[arg(long)]
    t: usize,
}

#[derive(Args)]
struct OracleArgs {
    #[arg(long)]
    n: usize,
    /// Forest shape: number of 3-vertex paths (requires --t).
    #[arg(long, conflicts_with = "triangle", requires = "t")]
    k: Option<usize>,
    /// Forest shape: number of independent edges (requires --k).
    #[arg(long, requires = "k")]
    t: Option<usize>,
    /// Target a triangle instead of a forest.
    #[arg(long)]
    triangle: bool,
    /// Node budget; required above the unbudgeted size cap. Exits with
    /// code 2 when the budget runs out (value is then a lower bound).
    #[arg(long)]
    budget: Option<u64>,
    /// Rainbow-free coloring to use as the starting incumbent.
    #[arg(long)]
    seed_file: Option<PathBuf>,
    /// Write the optimal (or best-found) coloring here.
    #[arg(long)]
    extremal_out: Option<PathBuf>,
}

#[derive(Args)]
struct CrosscheckArgs {
    /// Suite name: `base` (deterministic, seconds) or `extended` (adds
    /// randomized trials and one exhaustive run).
    #[arg(long, default_value = "base")]
    suite: String,
    /// Master seed for the randomized rows of the extended suite.
    #[arg(long, default_value_t = 0xa11_face5)]
    seed: u64,
    /// Emit CSV instead of aligned text (overrides --json).
    #[arg(long)]
    csv: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::FAILURE
        }
    }
}

fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    let threads = effective_threads(cli.threads)?;
    let parallelism = if cli.sequential {
        Parallelism::Sequential
    } else {
        Parallelism::default()
    };
    let json = cli.json;
    with_pool(threads, || match cli.command {
        Command::Formula(args) => cmd_formula(args, json),
        Command::Construct(args) => cmd_construct(args, json),
        Command::Detect(args) => cmd_detect(args, json, parallelism),
        Command::Find(args) => cmd_find(args, json, parallelism),
        Command::Oracle(args) => cmd_oracle(args, json),
        Command::Crosscheck(args) => cmd_crosscheck(args, json, parallelism),
    })
}

fn effective_threads(cli_threads: usize) -> anyhow::Result<usize> {
    match std::env::var("ARLAB_THREADS") {
        Ok(raw) => raw
            .trim()
            .parse()
            .with_context(|| format!("ARLAB_THREADS must be an integer, got `{raw}`")),
        Err(std::env::VarError::NotPresent) => Ok(cli_threads),
        Err(e) => Err(e).context("reading ARLAB_THREADS"),
    }
}

fn with_pool<R>(threads: usize, f: impl FnOnce() -> R + Send) -> R
where
    R: Send,
{
    if threads == 0 {
        f()
    } else {
        exec::with_thread_count(threads, f)
    }
}

// ---------------------------------------------------------------------------
// formula
// ---------------------------------------------------------------------------

fn cmd_formula(args: FormulaArgs, json: bool) -> anyhow::Result<ExitCode> {
    let family = FormulaFamily::parse(&args.family, &args.params)?;
    let result = family.evaluate();
    if json {
        println!("{}", serde_json::to_string_pretty(&result)?);
    } else if let Some(value) = result.value {
        let branch = result
            .branch
            .map(|b| format!(" [branch {b}]"))
            .unwrap_or_default();
        println!("{}({}) = {value}{branch}", result.family, args.params);
    } else {
        println!(
            "{}({}) out of domain: {}",
            result.family,
            args.params,
            result.out_of_domain.as_deref().unwrap_or("unspecified")
        );
    }
    Ok(ExitCode::SUCCESS)
}

// ---------------------------------------------------------------------------
// construct
// ---------------------------------------------------------------------------

fn cmd_construct(args: ConstructArgs, json: bool) -> anyhow::Result<ExitCode> {
    let coloring = constructions::build_lower_bound(args.k, args.t)?;
    match args.out {
        Some(path) => {
            let format = match args.format {
                FileFormat::Json => ColoringFormat::Json,
                FileFormat::Text => ColoringFormat::Text,
            };
            io::write(&path, &coloring, format)?;
            if json {
                #[derive(Serialize)]
                struct Summary<'a> {
                    n: usize,
                    classes: usize,
                    path: &'a str,
                }
                let summary = Summary {
                    n: coloring.n(),
                    classes: coloring.class_count(),
                    path: &path.display().to_string(),
                };
                println!("{}", serde_json::to_string_pretty(&summary)?);
            } else {
                println!(
                    "wrote K_{} coloring with {} classes to {}",
                    coloring.n(),
                    coloring.class_count(),
                    path.display()
                );
            }
        }
        None => {
            if json {
                println!("{}", io::to_json(&coloring));
            } else {
                print!("{}", io::to_text(&coloring));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

// ---------------------------------------------------------------------------
// detect
// ---------------------------------------------------------------------------

fn cmd_detect(args: DetectArgs, json: bool, parallelism: Parallelism) -> anyhow::Result<ExitCode> {
    let coloring = io::read(&args.input)
        .with_context(|| format!("reading coloring from {}", args.input.display()))?;
    let shape = ForestShape::new(args.k, args.t)?;
    let options = DetectorOptions {
        budget: args.budget,
        parallelism,
        ..DetectorOptions::default()
    };
    let outcome = find_rainbow_forest(&coloring, shape, &options)?;
    if json {
        println!("{}", serde_json::to_string_pretty(&outcome)?);
    } else if let Some(witness) = &outcome.witness {
        println!("rainbow copy found: {}", witness_text(witness));
        println!("nodes explored: {}", outcome.nodes_explored);
    } else if outcome.complete {
        println!(
            "no rainbow copy exists (search exhausted, {} nodes)",
            outcome.nodes_explored
        );
    } else {
        println!(
            "inconclusive: node budget exhausted after {} nodes",
            outcome.nodes_explored
        );
    }
    Ok(if outcome.complete {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(2)
    })
}

fn witness_text(witness: &RainbowWitness) -> String {
    let mut parts = Vec::new();
    for [a, b, c] in &witness.p3s {
        parts.push(format!("P3 {a}-{b}-{c}"));
    }
    for [a, b] in &witness.p2s {
        parts.push(format!("P2 {a}-{b}"));
    }
    let colors = witness
        .colors_used
        .iter()
        .map(|c| c.to_string())
        .collect::<Vec<_>>()
        .join(",");
    format!("{}; colors {{{colors}}}", parts.join("  "))
}

// ---------------------------------------------------------------------------
// find
// ---------------------------------------------------------------------------

fn cmd_find(args: FindArgs, json: bool, parallelism: Parallelism) -> anyhow::Result<ExitCode> {
    let coloring = io::read(&args.input)
        .with_context(|| format!("reading coloring from {}", args.input.display()))?;
    let options = FinderOptions { parallelism };
    let outcome = find_constructive(&coloring, args.k, args.t, &options)?;
    if json {
        println!("{}", serde_json::to_string_pretty(&outcome)?);
        return Ok(ExitCode::SUCCESS);
    }
    println!(
        "spanning rainbow forest: {}",
        witness_text(&outcome.witness)
    );
    println!(
        "threshold {} classes, input has {}",
        class_threshold(coloring.n()),
        coloring.class_count()
    );
    for (i, level) in outcome.levels.iter().enumerate() {
        match level {
            LevelReport::Base { nodes } => {
                println!("level {i}: base search ({nodes} nodes)");
            }
            LevelReport::Repair {
                level_k,
                triple,
                retained_classes,
                radius,
                released,
                region_size,
                nodes,
            } => {
                println!(
                    "level {i}: k={level_k} removed triple {triple:?}, retained {retained_classes} \
                     classes, repaired at radius {radius} (released {released:?}, region {region_size} \
                     vertices, {nodes} nodes)"
                );
            }
            LevelReport::Fallback {
                level_k,
                triple,
                retained_classes,
                nodes,
            } => {
                println!(
                    "level {i}: k={level_k} removed triple {triple:?}, retained {retained_classes} \
                     classes, repair failed -> full search ({nodes} nodes)"
                );
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

// ---------------------------------------------------------------------------
// oracle
// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct OracleOutput {
    n: usize,
    target: String,
    value: Option<usize>,
    proven: bool,
    nodes: u64,
    leaves: u64,
    extremal: Option<ColoringOutput>,
}

#[derive(Serialize)]
struct ColoringOutput {
    n: usize,
    colors: Vec<usize>,
}

impl ColoringOutput {
    fn from(coloring: &EdgeColoring) -> Self {
        ColoringOutput {
            n: coloring.n(),
            colors: coloring.colors().to_vec(),
        }
    }
}

fn cmd_oracle(args: OracleArgs, json: bool) -> anyhow::Result<ExitCode> {
    let config = OracleConfig {
        budget: args.budget,
        seed: args
            .seed_file
            .as_deref()
            .map(io::read)
            .transpose()
            .context("reading seed coloring")?,
        ..OracleConfig::default()
    };
    let (target, result): (String, ARResult) = if args.triangle {
        ("C3".into(), compute_ar_triangle(args.n, &config)?)
    } else {
        let (k, t) = match (args.k, args.t) {
            (Some(k), Some(t)) => (k, t),
            _ => bail!("specify a forest with --k and --t, or pass --triangle"),
        };
        let shape = ForestShape::new(k, t)?;
        (
            format!("{k}P3 + {t}P2"),
            compute_ar(args.n, shape, &config)?,
        )
    };
    if let (Some(path), Some(extremal)) = (&args.extremal_out, &result.extremal) {
        io::write(path, extremal, ColoringFormat::Json)?;
    }
    let proven = result.status == ARStatus::Proven;
    if json {
        let out = OracleOutput {
            n: args.n,
            target,
            value: result.value,
            proven,
            nodes: result.nodes,
            leaves: result.leaves,
            extremal: result.extremal.as_ref().map(ColoringOutput::from),
        };
        println!("{}", serde_json::to_string_pretty(&out)?);
    } else {
        match (result.value, proven) {
            (Some(v), true) => println!(
                "AR({}, {target}) = {v} (proven; {} nodes, {} complete colorings)",
                args.n, result.nodes, result.leaves
            ),
            (Some(v), false) => println!(
                "AR({}, {target}) >= {v} (budget hit after {} nodes)",
                args.n, result.nodes
            ),
            (None, true) => println!(
                "AR({}, {target}): no rainbow-free coloring exists at all ({} nodes)",
                args.n, result.nodes
            ),
            (None, false) => println!(
                "AR({}, {target}): nothing found within budget ({} nodes)",
                args.n, result.nodes
            ),
        }
    }
    Ok(if proven {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(2)
    })
}

// ---------------------------------------------------------------------------
// crosscheck
// ---------------------------------------------------------------------------

fn cmd_crosscheck(
    args: CrosscheckArgs,
    json: bool,
    parallelism: Parallelism,
) -> anyhow::Result<ExitCode> {
    let report = crosscheck::run_suite(&args.suite, args.seed, parallelism)?;
    if args.csv {
        print!("{}", report.render_csv());
    } else if json {
        println!("{}", serde_json::to_string_pretty(&report)?);
    } else {
        print!("{}", report.render_text());
    }
    Ok(if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    })
}
