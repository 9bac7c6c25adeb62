use std::fs;
use std::path::{Path as FsPath, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use restoration::experiment::{parse_config, run_algorithm, run_experiment, Algorithm, ExperimentConfig};
use restoration::io::{instance_to_json, read_faults, read_graph, write_faults, write_graph};
use restoration::lowerbound::{gen_glued, gen_single_odd, LowerBoundInstance};
use restoration::oracle::{restorable_check_with, FaultOracle, RestorabilityTable, VerifierReport};
use restoration::{verify_decomposition, Decomposition, ReplacementInstance};

#[derive(Parser)]
#[command(name = "restore", version, about = "Split replacement paths into subpaths that need few faults")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Algo {
    Greedy,
    Poly,
    Baseline,
}

impl From<Algo> for Algorithm {
    fn from(a: Algo) -> Self {
        match a {
            Algo::Greedy => Algorithm::Greedy,
            Algo::Poly => Algorithm::Poly,
            Algo::Baseline => Algorithm::Baseline,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Decompose the shortest s-t path avoiding the faults.
    Decompose {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        faults: PathBuf,
        #[arg(long)]
        s: usize,
        #[arg(long)]
        t: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum, default_value = "poly")]
        algo: Algo,
        /// Use the form with separator edges (always used for weighted graphs).
        #[arg(long)]
        weighted: bool,
        #[arg(long)]
        linear_scan: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a decomposition file against a graph and fault set.
    Verify {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        faults: PathBuf,
        #[arg(long)]
        decomposition: PathBuf,
        /// Defaults to the budget recorded in the decomposition.
        #[arg(long)]
        budget: Option<usize>,
        /// Endpoints default to the decomposition's first and last boundary.
        #[arg(long)]
        s: Option<usize>,
        #[arg(long)]
        t: Option<usize>,
    },
    /// Decide restorability of a generated lower-bound instance.
    Lowerbound {
        #[arg(long)]
        g: u32,
        #[arg(long, default_value_t = 1)]
        copies: usize,
        /// Budget to test instead of the per-copy fault count minus two.
        #[arg(long)]
        r: Option<usize>,
    },
    /// Run a seeded sweep; the built-in suite is used without --config.
    Experiment {
        #[arg(long)]
        config: Option<PathBuf>,
        /// Overrides the configured seed.
        #[arg(long)]
        seed: Option<u64>,
        /// JSON report path; the CSV goes next to it.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Record wall time per run (reports are then no longer reproducible).
        #[arg(long)]
        timing: bool,
    },
    /// Write a lower-bound instance as graph, fault and instance files.
    Gen {
        #[arg(long)]
        g: u32,
        #[arg(long, default_value_t = 1)]
        copies: usize,
        /// Drop one chord so the fault count is odd (single copy only).
        #[arg(long)]
        odd: bool,
        /// Output directory; the instance JSON goes to stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn emit(text: &str, out: Option<&FsPath>) -> Result<()> {
    match out {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

#[derive(Serialize)]
struct DecomposeOutput<'a> {
    #[serde(flatten)]
    decomposition: &'a Decomposition,
    verified: bool,
    checks: &'a VerifierReport,
}

fn load_instance(graph: &FsPath, faults: &FsPath, s: usize, t: usize) -> Result<ReplacementInstance> {
    let g = read_graph(graph).with_context(|| format!("reading {}", graph.display()))?;
    let f = read_faults(faults, &g).with_context(|| format!("reading {}", faults.display()))?;
    Ok(ReplacementInstance::from_endpoints(g, f, s, t)?)
}

#[allow(clippy::too_many_arguments)]
fn decompose(
    graph: &FsPath,
    faults: &FsPath,
    s: usize,
    t: usize,
    k: usize,
    algo: Algo,
    weighted: bool,
    linear_scan: bool,
    out: Option<&FsPath>,
) -> Result<bool> {
    let inst = load_instance(graph, faults, s, t)?;
    let algorithm = Algorithm::from(algo);
    let f = inst.fault_count();
    if k == 0 || k > f {
        bail!("k = {k} must lie in 1..={f}");
    }
    let d = if weighted && !inst.graph().is_weighted() && algorithm != Algorithm::Baseline {
        // Separator form on a unit-length graph.
        match algorithm {
            Algorithm::Greedy => restoration::greedy_decompose_weighted(&inst, f / k)?,
            _ => {
                let opts = restoration::poly::PolyOptions { linear_scan };
                restoration::poly::compute_subpaths_weighted_traced(&inst, k, opts)?.decomposition
            }
        }
    } else {
        run_algorithm(&inst, algorithm, k, linear_scan)?
    };
    let report = verify_decomposition(&inst, &d, algorithm.budget(f, k));
    let output = DecomposeOutput { decomposition: &d, verified: report.passed, checks: &report };
    emit(&serde_json::to_string(&output)?, out)?;
    Ok(report.passed)
}

fn verify(
    graph: &FsPath,
    faults: &FsPath,
    decomposition: &FsPath,
    budget: Option<usize>,
    s: Option<usize>,
    t: Option<usize>,
) -> Result<bool> {
    let text = fs::read_to_string(decomposition).with_context(|| format!("reading {}", decomposition.display()))?;
    let d = Decomposition::from_json(&text).context("parsing the decomposition")?;
    let (Some(&first), Some(&last)) = (d.boundaries.first(), d.boundaries.last()) else {
        bail!("decomposition has no boundaries");
    };
    let inst = load_instance(graph, faults, s.unwrap_or(first), t.unwrap_or(last))?;
    let report = verify_decomposition(&inst, &d, budget.unwrap_or(d.budget));
    println!("{}", serde_json::to_string(&report)?);
    for (check, message) in report.failures() {
        eprintln!("{check}: {message}");
    }
    Ok(report.passed)
}

#[derive(Serialize)]
struct LowerBoundOutput {
    g: u32,
    copies: usize,
    vertices: usize,
    faults: usize,
    per_copy_faults: usize,
    q: usize,
    r: usize,
    restorable: bool,
    r_min: usize,
    /// `r_min` for `q = 1, 2, ...`.
    frontier: Vec<usize>,
}

fn lowerbound(g: u32, copies: usize, r: Option<usize>) -> Result<bool> {
    let lbi = gen_glued(g, copies)?;
    let inst = &lbi.instance;
    let per_copy = lbi.per_copy_fault_count();
    let q = 2 * copies;
    let r_used = r.unwrap_or(per_copy.saturating_sub(2));
    let oracle = FaultOracle::new(inst);
    let table = RestorabilityTable::build(&oracle);
    let verdict = restorable_check_with(&oracle, &table, q, r_used)?;
    let output = LowerBoundOutput {
        g,
        copies,
        vertices: inst.graph().vertex_count(),
        faults: inst.fault_count(),
        per_copy_faults: per_copy,
        q,
        r: r_used,
        restorable: verdict.restorable,
        r_min: verdict.r_min,
        frontier: table.frontier(2 * q),
    };
    println!("{}", serde_json::to_string(&output)?);
    // With an explicit budget the command only reports.
    Ok(r.is_some() || !verdict.restorable)
}

fn experiment(config: Option<&FsPath>, seed: Option<u64>, out: Option<&FsPath>, timing: bool) -> Result<bool> {
    let mut config = match config {
        Some(p) => {
            let text = fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
            match parse_config(&text) {
                Ok(c) => c,
                Err(issues) => {
                    let lines: Vec<String> = issues.iter().map(ToString::to_string).collect();
                    bail!("invalid configuration:\n{}", lines.join("\n"));
                }
            }
        }
        None => ExperimentConfig::default(),
    };
    if let Some(seed) = seed {
        config.seed = seed;
    }
    let report = run_experiment(&config, timing)?;
    let json = report.to_json()?;
    match out {
        Some(p) => {
            fs::write(p, &json).with_context(|| format!("writing {}", p.display()))?;
            let csv_path = p.with_extension("csv");
            fs::write(&csv_path, report.to_csv()?).with_context(|| format!("writing {}", csv_path.display()))?;
        }
        None => println!("{json}"),
    }
    Ok(report.all_verified)
}

fn gen(g: u32, copies: usize, odd: bool, out: Option<&FsPath>) -> Result<bool> {
    let lbi: LowerBoundInstance = if odd {
        if copies != 1 {
            bail!("--odd applies to a single copy");
        }
        gen_single_odd(g)?
    } else {
        gen_glued(g, copies)?
    };
    let inst = &lbi.instance;
    match out {
        Some(dir) => {
            fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
            fs::write(dir.join("graph.txt"), write_graph(inst.graph()))?;
            fs::write(dir.join("faults.txt"), write_faults(inst.faults(), inst.graph()))?;
            fs::write(dir.join("instance.json"), instance_to_json(inst)?)?;
            println!("{} {}", inst.s(), inst.t());
        }
        None => println!("{}", instance_to_json(inst)?),
    }
    Ok(true)
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Decompose { graph, faults, s, t, k, algo, weighted, linear_scan, out } => {
            decompose(&graph, &faults, s, t, k, algo, weighted, linear_scan, out.as_deref())
        }
        Command::Verify { graph, faults, decomposition, budget, s, t } => {
            verify(&graph, &faults, &decomposition, budget, s, t)
        }
        Command::Lowerbound { g, copies, r } => lowerbound(g, copies, r),
        Command::Experiment { config, seed, out, timing } => {
            experiment(config.as_deref(), seed, out.as_deref(), timing)
        }
        Command::Gen { g, copies, odd, out } => gen(g, copies, odd, out.as_deref()),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
