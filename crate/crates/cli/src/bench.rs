use std::time::{Duration, Instant};

use anyhow::{bail, Result};
use clap::{Args, ValueEnum};
use mesp::generators::{cluster_plus_p, random_connected, random_prime_pattern, subdivided_core, substitution_with_sizes};
use mesp::modulators::{modular_decomposition, Modulator, ModulatorKind};
use mesp::paths::count_shortest_paths;
use mesp::solvers::{minimize_k, solve_bruteforce, solve_with, MespQuery, SolverKind};
use mesp::{DistanceMatrix, Error, Graph};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::report::RNG;
use crate::CapArgs;

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Family {
    ClusterPlusP,
    SubdividedCore,
    Substitution,
    Random,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Args)]
pub struct BenchArgs {
    #[arg(long, value_enum)]
    family: Family,
    /// Vertex counts, comma separated.
    #[arg(long, value_delimiter = ',', default_value = "20,40")]
    sizes: Vec<usize>,
    /// Modulator size (cluster-plus-p), core size (subdivided-core),
    /// pattern size (substitution) or edge density in percent (random).
    #[arg(long)]
    param: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Solvers to time; defaults to the family's own solver and auto.
    #[arg(long, value_delimiter = ',')]
    solvers: Vec<SolverKind>,
    /// Seconds brute force gets per decision before it counts as timed out.
    #[arg(long, default_value_t = 10.0)]
    oracle_timeout: f64,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    #[command(flatten)]
    caps: CapArgs,
}

#[derive(Serialize)]
struct Row {
    family: String,
    n: usize,
    m: usize,
    param: usize,
    seed: u64,
    /// Whether the construction's own parameter witness passes validation.
    witness_ok: bool,
    k: u32,
    solver: &'static str,
    decision: Option<bool>,
    millis: f64,
    /// `yes`, `no`, `timeout`, or empty when the solver failed.
    oracle: String,
    agrees: Option<bool>,
    shortest_paths: Option<u128>,
    path_bound: Option<f64>,
    error: Option<String>,
    rng: &'static str,
}

struct Instance {
    graph: Graph,
    witness_ok: bool,
    own_solver: SolverKind,
    leaf_bound: Option<usize>,
}

fn generate(family: Family, n: usize, param: usize, rng: &mut ChaCha8Rng) -> Result<Instance> {
    Ok(match family {
        Family::ClusterPlusP => {
            if param > n {
                bail!("p = {param} exceeds n = {n}");
            }
            let inst = cluster_plus_p(n, param, 6, 0.1, rng);
            let witness_ok = Modulator::new(&inst.graph, ModulatorKind::Cluster, inst.modulator).is_ok();
            Instance { graph: inst.graph, witness_ok, own_solver: SolverKind::Cluster, leaf_bound: None }
        }
        Family::SubdividedCore => {
            if param < 2 || param > n {
                bail!("core size must lie in 2..=n");
            }
            let sd = subdivided_core(param, param / 2, n, rng);
            Instance { graph: sd.graph, witness_ok: true, own_solver: SolverKind::Brute, leaf_bound: Some(sd.leaf_bound) }
        }
        Family::Substitution => {
            if param < 4 || param > n {
                bail!("pattern size must lie in 4..=n");
            }
            let pattern = random_prime_pattern(param, rng);
            let mut sizes = vec![1; param];
            for _ in param..n {
                sizes[rng.gen_range(0..param)] += 1;
            }
            let sub = substitution_with_sizes(&pattern, &sizes, rng);
            let witness_ok = modular_decomposition(&sub.graph).modular_width() <= param;
            Instance { graph: sub.graph, witness_ok, own_solver: SolverKind::ModularWidth, leaf_bound: None }
        }
        Family::Random => {
            let g = random_connected(n, param as f64 / 100.0, rng);
            Instance { graph: g, witness_ok: true, own_solver: SolverKind::Auto, leaf_bound: None }
        }
    })
}

fn family_name(f: Family) -> String {
    f.to_possible_value().expect("no skipped variants").get_name().to_string()
}

/// Returns whether every decision that could be checked agreed with brute force.
pub fn run(args: BenchArgs) -> Result<bool> {
    let param = args.param.unwrap_or(match args.family {
        Family::ClusterPlusP => 2,
        Family::SubdividedCore => 6,
        Family::Substitution => 5,
        Family::Random => 30,
    });
    let caps = args.caps.caps();
    let budget = Duration::from_secs_f64(args.oracle_timeout);
    let mut rows = Vec::new();
    for (i, &n) in args.sizes.iter().enumerate() {
        let seed = args.seed.wrapping_add(i as u64);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let inst = generate(args.family, n, param, &mut rng)?;
        let g = &inst.graph;
        let dist = DistanceMatrix::new(g);
        let (shortest_paths, path_bound) = match inst.leaf_bound {
            Some(l) => (
                Some(count_shortest_paths(g, &dist)),
                Some(2f64.powi(4 * l as i32) * (n * n) as f64),
            ),
            None => (None, None),
        };
        let solvers = if args.solvers.is_empty() {
            let mut s = vec![inst.own_solver];
            if inst.own_solver != SolverKind::Auto {
                s.push(SolverKind::Auto);
            }
            s
        } else {
            args.solvers.clone()
        };

        let (k_star, _, _) = minimize_k(g, &dist, inst.own_solver, &caps)?;
        for k in [Some(k_star), k_star.checked_sub(1)].into_iter().flatten() {
            let q = MespQuery::new(g, &dist, k);
            let oracle = match solve_bruteforce(&q.with_deadline(Instant::now() + budget)) {
                Ok(a) => Some(a.decision),
                Err(Error::Timeout) => None,
                Err(e) => return Err(e.into()),
            };
            for &solver in &solvers {
                let start = Instant::now();
                let result = solve_with(&q, solver, &caps);
                let millis = start.elapsed().as_secs_f64() * 1e3;
                let (decision, error) = match result {
                    Ok((a, _)) => (Some(a.decision), None),
                    Err(e) => (None, Some(e.to_string())),
                };
                rows.push(Row {
                    family: family_name(args.family),
                    n: g.n(),
                    m: g.m(),
                    param,
                    seed,
                    witness_ok: inst.witness_ok,
                    k,
                    solver: solver.name(),
                    decision,
                    millis,
                    oracle: match oracle {
                        Some(true) => "yes".into(),
                        Some(false) => "no".into(),
                        None => "timeout".into(),
                    },
                    agrees: decision.zip(oracle).map(|(d, o)| d == o),
                    shortest_paths,
                    path_bound,
                    error,
                    rng: RNG,
                });
            }
        }
    }

    match args.format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&rows)?),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(std::io::stdout());
            for r in &rows {
                w.serialize(r)?;
            }
            w.flush()?;
        }
    }
    let bound_ok = rows
        .iter()
        .all(|r| r.shortest_paths.zip(r.path_bound).map_or(true, |(c, b)| c as f64 <= b));
    Ok(bound_ok && rows.iter().all(|r| r.witness_ok && r.agrees != Some(false)))
}
