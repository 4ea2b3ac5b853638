//! `mesp` command-line front end.
//!
//! Exit codes: 0 for yes (or a valid witness), 1 for no, 2 for usage,
//! input, capacity and timeout errors.

mod bench;
mod report;

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use mesp::format::parse_graph;
use mesp::solvers::{minimize_k, solve_with, Caps, MespQuery, SolverKind};
use mesp::{DistanceMatrix, Graph, PathWitness};
use sha2::{Digest, Sha256};

use report::{Counters, InputInfo, Params, RunReport, Timings, VerifyReport};

#[derive(Parser)]
#[command(name = "mesp", version, about = "Minimum eccentricity shortest paths")]
struct Cli {
    /// Worker threads for the parallel solvers (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide a bound or find the smallest one.
    Solve(SolveArgs),
    /// Check a candidate witness.
    Verify(VerifyArgs),
    /// Run solvers on generated families and compare with brute force.
    Bench(bench::BenchArgs),
}

#[derive(Args)]
struct SolveArgs {
    /// Graph file (edge list or DIMACS), or `-` for standard input.
    file: PathBuf,
    #[arg(long, default_value = "auto")]
    solver: SolverKind,
    #[arg(long, conflicts_with = "minimize", required_unless_present = "minimize")]
    k: Option<u32>,
    /// Report the smallest feasible k and its witness.
    #[arg(long)]
    minimize: bool,
    #[arg(long)]
    json: bool,
    /// Recorded in the report; the solvers themselves are deterministic.
    #[arg(long)]
    seed: Option<u64>,
    #[command(flatten)]
    caps: CapArgs,
    /// Give up after this many seconds (honoured by the brute-force solver).
    #[arg(long)]
    timeout: Option<f64>,
}

#[derive(Args, Clone, Copy)]
pub(crate) struct CapArgs {
    #[arg(long, default_value_t = Caps::default().p)]
    cap_p: usize,
    #[arg(long, default_value_t = Caps::default().c)]
    cap_c: usize,
    #[arg(long, default_value_t = Caps::default().mw)]
    cap_mw: usize,
}

impl CapArgs {
    pub(crate) fn caps(self) -> Caps {
        Caps { mw: self.cap_mw, p: self.cap_p, c: self.cap_c, ..Caps::default() }
    }
}

#[derive(Args)]
struct VerifyArgs {
    file: PathBuf,
    /// Vertex list such as `0,1,2,3`.
    witness: String,
    #[arg(long)]
    k: u32,
    #[arg(long)]
    json: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let result = match cli.command {
        Command::Solve(args) => solve(args),
        Command::Verify(args) => verify(args),
        Command::Bench(args) => bench::run(args),
    };
    match result {
        Ok(yes) => ExitCode::from(if yes { 0 } else { 1 }),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn read_input(path: &Path) -> Result<Vec<u8>> {
    if path.as_os_str() == "-" {
        let mut buf = Vec::new();
        std::io::Read::read_to_end(&mut std::io::stdin(), &mut buf)?;
        Ok(buf)
    } else {
        std::fs::read(path).with_context(|| format!("reading {}", path.display()))
    }
}

fn load(path: &Path) -> Result<(Graph, InputInfo)> {
    let bytes = read_input(path)?;
    let text = std::str::from_utf8(&bytes).context("input is not UTF-8")?;
    let g = parse_graph(text)?;
    if !g.is_connected() {
        return Err(mesp::Error::Disconnected.into());
    }
    let info = InputInfo {
        path: path.display().to_string(),
        sha256: hex::encode(Sha256::digest(&bytes)),
        n: g.n(),
        m: g.m(),
    };
    Ok((g, info))
}

fn solve(args: SolveArgs) -> Result<bool> {
    let total = Instant::now();
    let (g, input) = load(&args.file)?;
    let parse = total.elapsed();
    let start = Instant::now();
    let dist = DistanceMatrix::new(&g);
    let distances = start.elapsed();
    let caps = args.caps.caps();

    let start = Instant::now();
    let (k, answer, choice) = if args.minimize {
        minimize_k(&g, &dist, args.solver, &caps)?
    } else {
        let k = args.k.expect("clap requires --k without --minimize");
        let mut q = MespQuery::new(&g, &dist, k);
        if let Some(secs) = args.timeout {
            q = q.with_deadline(Instant::now() + Duration::from_secs_f64(secs));
        }
        let (answer, choice) = solve_with(&q, args.solver, &caps)?;
        (k, answer, choice)
    };
    let solve = start.elapsed().saturating_sub(choice.planning);

    let report = RunReport {
        version: env!("CARGO_PKG_VERSION"),
        input,
        requested_solver: args.solver.name(),
        solver: choice.kind.map_or("none", SolverKind::name),
        params: Params::new(&choice, &caps),
        mode: if args.minimize { "minimize" } else { "decide" },
        k,
        decision: answer.decision,
        eccentricity: answer.witness.as_ref().and_then(|w| w.eccentricity(&dist)),
        witness: answer.witness.as_ref().map(|w| w.vertices().to_vec()),
        timings_ms: Timings::new(parse, distances, choice.planning, solve, total.elapsed()),
        counters: Counters::from(&answer.stats),
        seed: args.seed,
        rng: report::RNG,
    };
    if args.json {
        println!("{}", serde_json::to_string_pretty(&report)?);
    } else {
        print!("{}", report.to_text());
    }
    Ok(report.decision)
}

fn parse_witness(text: &str, n: usize) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for tok in text.split(|c: char| c == ',' || c.is_whitespace()).filter(|t| !t.is_empty()) {
        let v: usize = tok.parse().with_context(|| format!("malformed witness entry `{tok}`"))?;
        if v >= n {
            bail!("witness vertex {v} out of range for a graph on {n} vertices");
        }
        out.push(v);
    }
    if out.is_empty() {
        bail!("witness is empty");
    }
    Ok(out)
}

fn verify(args: VerifyArgs) -> Result<bool> {
    let (g, input) = load(&args.file)?;
    let dist = DistanceMatrix::new(&g);
    let witness = PathWitness::new(parse_witness(&args.witness, g.n())?);
    let shortest = witness.is_shortest(&dist);
    let eccentricity = witness.eccentricity(&dist);
    let valid = shortest && eccentricity.is_some_and(|e| e <= args.k);
    let report = VerifyReport {
        input,
        witness: witness.vertices().to_vec(),
        k: args.k,
        shortest,
        eccentricity,
        valid,
    };
    if args.json {
        println!("{}", serde_json::to_string_pretty(&report)?);
    } else {
        print!("{}", report.to_text());
    }
    Ok(valid)
}
