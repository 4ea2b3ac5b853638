//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Run with `cargo test -p mesp --test acceptance`. Extra arguments select
//! criteria by substring, e.g. `cargo test -p mesp --test acceptance -- csc`.

use std::ops::ControlFlow;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use mesp::csc::{solve_csc, solve_csc_bruteforce, Candidate, CscInstance};
use mesp::generators::{
    cluster_plus_p, connected_graphs, disjoint_paths_plus_c, random_connected, random_prime_pattern,
    subdivided_core, substitution_with_sizes,
};
use mesp::modulators::{
    min_cluster_modulator, min_disjoint_paths_modulator, modular_decomposition, Modulator, ModulatorKind,
};
use mesp::solvers::{
    minimize_k, solve_bruteforce, solve_distance_to_cluster, solve_distance_to_disjoint_paths,
    solve_modular_width, Caps, MespQuery, SolverKind,
};
use mesp::{enumerate_shortest_paths, DistanceMatrix, Graph, Error};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const EXHAUSTIVE_MAX_N: usize = 7;
const EXHAUSTIVE_BUDGET: Duration = Duration::from_secs(600);
const RANDOM_GRAPHS: usize = 1000;
const RANDOM_N: (usize, usize) = (8, 14);
const RANDOM_DENSITY: (f64, f64) = (0.05, 0.7);
const RANDOM_BUDGET: Duration = Duration::from_secs(600);
const CSC_INSTANCES: usize = 10_000;
const CSC_MAX_R: usize = 8;
const CSC_MAX_GROUPS: usize = 5;
const CSC_MAX_GROUP: usize = 4;
const CSC_BUDGET: Duration = Duration::from_secs(60);
const LEMMA2_MAX_N: usize = 7;
const MINIMALITY_MAX_N: usize = 8;
const MINIMALITY_BUDGET: Duration = Duration::from_secs(300);
const MDTREE_MAX_N: usize = 7;
const SPOT_INSTANCES: usize = 500;
const PERF_CLUSTER: (usize, usize, Duration) = (100, 3, Duration::from_secs(60));
const PERF_SUBSTITUTION: (usize, usize, Duration) = (200, 8, Duration::from_secs(10));
const PERF_SUBDIVIDED: (usize, usize, Duration) = (500, 10, Duration::from_secs(60));
const PERF_SPEEDUP: u32 = 10;

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome { passed, detail: detail.into() }
}

fn main() -> ExitCode {
    let filters: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("oracle-exhaustive", oracle_exhaustive),
        ("oracle-random", oracle_random),
        ("csc-random", csc_random),
        ("unique-order", unique_order_suite),
        ("modulator-minimality", modulator_minimality),
        ("mdtree-soundness", mdtree_soundness),
        ("structural-spot", structural_spot),
        ("performance-smoke", performance_smoke),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        if !filters.is_empty() && !filters.iter().any(|f| name.contains(f.as_str())) {
            continue;
        }
        let start = Instant::now();
        let out = run();
        println!(
            "{} {name}: {} ({:.1}s)",
            if out.passed { "PASS" } else { "FAIL" },
            out.detail,
            start.elapsed().as_secs_f64()
        );
        failed += usize::from(!out.passed);
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

/// Decisions of the three structural solvers against brute force for every
/// `k` up to the diameter. Returns the mismatches found.
fn compare_all(g: &Graph, mismatches: &mut Vec<String>) {
    let dist = DistanceMatrix::new(g);
    let tree = modular_decomposition(g);
    let cluster = min_cluster_modulator(g, g.n()).expect("the whole vertex set is a modulator");
    let paths = min_disjoint_paths_modulator(g, g.n()).expect("the whole vertex set is a modulator");
    for k in 0..=dist.diameter() {
        let q = MespQuery::new(g, &dist, k);
        let truth = solve_bruteforce(&q).unwrap().decision;
        let answers = [
            ("mw", solve_modular_width(&q, &tree).unwrap().decision),
            ("cluster", solve_distance_to_cluster(&q, &cluster).unwrap().decision),
            ("paths", solve_distance_to_disjoint_paths(&q, &paths).unwrap().decision),
        ];
        for (name, got) in answers {
            if got != truth {
                mismatches.push(format!("{name} k={k} edges={:?}", g.edges().collect::<Vec<_>>()));
            }
        }
    }
}

fn oracle_exhaustive() -> Outcome {
    let start = Instant::now();
    let mut mismatches = Vec::new();
    let mut graphs = 0;
    for n in 1..=EXHAUSTIVE_MAX_N {
        for g in connected_graphs(n) {
            compare_all(&g, &mut mismatches);
            graphs += 1;
        }
    }
    let elapsed = start.elapsed();
    let detail = format!(
        "{graphs} graphs, {} mismatches{}",
        mismatches.len(),
        mismatches.first().map(|m| format!(", first: {m}")).unwrap_or_default()
    );
    outcome(mismatches.is_empty() && graphs >= 850 && elapsed <= EXHAUSTIVE_BUDGET, detail)
}

fn oracle_random() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x0e5b);
    let mut mismatches = Vec::new();
    for _ in 0..RANDOM_GRAPHS {
        let n = rng.gen_range(RANDOM_N.0..=RANDOM_N.1);
        let density = rng.gen_range(RANDOM_DENSITY.0..RANDOM_DENSITY.1);
        let g = random_connected(n, density, &mut rng);
        compare_all(&g, &mut mismatches);
    }
    let elapsed = start.elapsed();
    let detail = format!(
        "{RANDOM_GRAPHS} graphs, n in {RANDOM_N:?}, {} mismatches{}",
        mismatches.len(),
        mismatches.first().map(|m| format!(", first: {m}")).unwrap_or_default()
    );
    outcome(mismatches.is_empty() && elapsed <= RANDOM_BUDGET, detail)
}

fn csc_random() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0xc5c);
    let (mut disagreements, mut uncovered, mut feasible) = (0, 0, 0);
    for _ in 0..CSC_INSTANCES {
        let r = rng.gen_range(0..=CSC_MAX_R);
        let m = rng.gen_range(0..=CSC_MAX_GROUPS);
        let mut inst = CscInstance::new(r);
        for _ in 0..m {
            let size = rng.gen_range(0..=CSC_MAX_GROUP);
            let group = (0..size)
                .map(|c| Candidate::new(c, rng.gen_range(0..1u64 << r)))
                .collect();
            inst.push_group(group);
        }
        let dp = solve_csc(&inst).unwrap();
        let brute = solve_csc_bruteforce(&inst).unwrap();
        if dp.is_some() != brute.is_some() {
            disagreements += 1;
        }
        if let Some(sol) = &dp {
            feasible += 1;
            if inst.covered_by(sol) != inst.full_set() {
                uncovered += 1;
            }
        }
    }
    let elapsed = start.elapsed();
    outcome(
        disagreements == 0 && uncovered == 0 && elapsed <= CSC_BUDGET,
        format!(
            "{CSC_INSTANCES} instances ({feasible} feasible), {disagreements} disagreements, {uncovered} non-covering selections"
        ),
    )
}

fn unique_order_suite() -> Outcome {
    let mut checks: u64 = 0;
    let mut failures = Vec::new();
    for n in 1..=LEMMA2_MAX_N {
        for g in connected_graphs(n) {
            let dist = DistanceMatrix::new(&g);
            // visitable[s][mask]: some shortest path from s covers mask.
            let mut visitable = vec![vec![false; 1 << n]; n];
            enumerate_shortest_paths::<()>(&g, &dist, false, |p| {
                let s = p[0];
                let mask = p.iter().fold(0usize, |m, &v| m | 1 << v);
                visitable[s][mask] = true;
                // Every subset of the path, in path order.
                for sub in 0usize..1 << p.len() {
                    let along: Vec<usize> =
                        (0..p.len()).filter(|&i| sub >> i & 1 == 1).map(|i| p[i]).collect();
                    checks += 1;
                    if dist.unique_order(s, &along).as_deref() != Some(&along[..]) {
                        failures.push(format!("path {p:?} subset {along:?}"));
                    }
                }
                ControlFlow::Continue(())
            });
            for s in 0..n {
                let table = &mut visitable[s];
                for b in 0..n {
                    for mask in 0..1usize << n {
                        if mask >> b & 1 == 1 && table[mask] {
                            table[mask ^ 1 << b] = true;
                        }
                    }
                }
                for mask in 0..1usize << n {
                    let set: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
                    checks += 1;
                    if dist.unique_order(s, &set).is_some() != table[mask] {
                        failures.push(format!("s={s} set {set:?} on {:?}", g.edges().collect::<Vec<_>>()));
                    }
                }
            }
        }
    }
    outcome(
        failures.is_empty(),
        format!(
            "{checks} checks, {} failures{}",
            failures.len(),
            failures.first().map(|f| format!(", first: {f}")).unwrap_or_default()
        ),
    )
}

/// Smallest modulator size by trying every vertex subset.
fn brute_minimum(g: &Graph, kind: ModulatorKind) -> usize {
    let n = g.n();
    (0u32..1 << n)
        .filter(|&mask| {
            let set: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
            Modulator::new(g, kind, set).is_ok()
        })
        .map(|mask| mask.count_ones() as usize)
        .min()
        .expect("the full vertex set always works")
}

fn modulator_minimality() -> Outcome {
    let start = Instant::now();
    let mut graphs = 0;
    let mut failures = Vec::new();
    for n in 1..=MINIMALITY_MAX_N {
        for g in connected_graphs(n) {
            graphs += 1;
            for kind in [ModulatorKind::Cluster, ModulatorKind::DisjointPaths] {
                let found = match kind {
                    ModulatorKind::Cluster => min_cluster_modulator(&g, n),
                    ModulatorKind::DisjointPaths => min_disjoint_paths_modulator(&g, n),
                }
                .expect("cap n always succeeds");
                if !found.is_valid(&g) || found.size() != brute_minimum(&g, kind) {
                    failures.push(format!("{kind:?} on {:?}", g.edges().collect::<Vec<_>>()));
                }
            }
        }
    }
    let elapsed = start.elapsed();
    outcome(
        failures.is_empty() && elapsed <= MINIMALITY_BUDGET,
        format!(
            "{graphs} graphs, {} failures{}",
            failures.len(),
            failures.first().map(|f| format!(", first: {f}")).unwrap_or_default()
        ),
    )
}

fn mdtree_soundness() -> Outcome {
    let mut graphs = 0;
    let mut failures = Vec::new();
    for n in 1..=MDTREE_MAX_N {
        for g in connected_graphs(n) {
            graphs += 1;
            let t = modular_decomposition(&g);
            if !t.is_sound_for(&g) {
                failures.push(format!("{t}"));
            }
        }
    }
    outcome(
        failures.is_empty(),
        format!(
            "{graphs} graphs, {} unsound trees{}",
            failures.len(),
            failures.first().map(|f| format!(", first: {f}")).unwrap_or_default()
        ),
    )
}

fn all_paths(g: &Graph, dist: &DistanceMatrix) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    enumerate_shortest_paths::<()>(g, dist, true, |p| {
        out.push(p.to_vec());
        ControlFlow::Continue(())
    });
    out
}

fn structural_spot() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5b07);
    let mut violations = [0usize; 4];
    let mut checked = [0u64; 4];

    // Estimate from guessed rings equals the true distance (cluster setting).
    for _ in 0..SPOT_INSTANCES {
        let n = rng.gen_range(8..=16);
        let p = rng.gen_range(1..=3);
        let inst = cluster_plus_p(n, p, 4, 0.2, &mut rng);
        let (g, u_set) = (&inst.graph, &inst.modulator);
        let dist = DistanceMatrix::new(g);
        for path in all_paths(g, &dist) {
            let on_u: Vec<usize> = path.iter().copied().filter(|v| u_set.contains(v)).collect();
            if on_u.is_empty() {
                continue;
            }
            let ring = |i: u32| -> Vec<usize> {
                u_set.iter().copied().filter(|&u| dist.to_set(u, &path) == i).collect()
            };
            let (r1, r2) = (ring(1), ring(2));
            let estimate = |u: usize| {
                dist.to_set(u, &on_u)
                    .min(dist.to_set(u, &r1).saturating_add(1))
                    .min(dist.to_set(u, &r2).saturating_add(2))
            };
            for u in 0..g.n() {
                checked[0] += 1;
                let truth = if u_set.contains(&u) {
                    dist.to_set(u, &path)
                } else {
                    let rest: Vec<usize> = path
                        .iter()
                        .copied()
                        .filter(|&x| !(x == u || (g.has_edge(u, x) && !u_set.contains(&x))))
                        .collect();
                    dist.to_set(u, &rest)
                };
                if estimate(u) != truth {
                    violations[0] += 1;
                }
            }
        }
    }

    // Distance estimate through the augmented modulator (paths setting).
    for _ in 0..SPOT_INSTANCES {
        let n = rng.gen_range(8..=18);
        let c = rng.gen_range(1..=3);
        let inst = disjoint_paths_plus_c(n, c, 6, 0.15, &mut rng);
        let (g, c_set) = (&inst.graph, &inst.modulator);
        let dist = DistanceMatrix::new(g);
        for path in all_paths(g, &dist) {
            let mut hat = c_set.clone();
            hat.extend([path[0], *path.last().unwrap()]);
            hat.sort_unstable();
            hat.dedup();
            let on_path = hat.iter().filter(|v| path.contains(v)).count();
            let k = dist.eccentricity_of_set(&path).unwrap();
            let est = |v: usize| hat.iter().map(|&s| dist.get(v, s) + dist.to_set(s, &path)).min().unwrap();
            let mut far_off_path = 0;
            for v in 0..g.n() {
                checked[1] += 1;
                if dist.to_set(v, &path) > est(v) {
                    violations[1] += 1;
                }
                if !path.contains(&v) && est(v) > k {
                    far_off_path += 1;
                }
            }
            checked[2] += 1;
            if far_off_path > 2 * (on_path - 1) {
                violations[2] += 1;
            }
        }
    }

    // One vertex per module suffices (substitution into a prime pattern).
    for _ in 0..SPOT_INSTANCES {
        let size = rng.gen_range(4..=5);
        let pattern = random_prime_pattern(size, &mut rng);
        let mut sizes = vec![1; size];
        for _ in 0..rng.gen_range(0..=7 - size) {
            let i = rng.gen_range(0..size);
            sizes[i] += 1;
        }
        let sub = substitution_with_sizes(&pattern, &sizes, &mut rng);
        let g = &sub.graph;
        let dist = DistanceMatrix::new(g);
        let paths = all_paths(g, &dist);
        let best = paths.iter().map(|p| dist.eccentricity_of_set(p).unwrap()).min().unwrap();
        let module_of = |v: usize| sub.modules.iter().position(|m| m.contains(&v)).unwrap();
        let ok = paths.iter().any(|p| {
            let mut seen: Vec<usize> = p.iter().map(|&v| module_of(v)).collect();
            seen.sort_unstable();
            seen.dedup();
            seen.len() == p.len() && dist.eccentricity_of_set(p).unwrap() == best
        });
        checked[3] += 1;
        if !ok {
            violations[3] += 1;
        }
    }

    outcome(
        violations.iter().all(|&v| v == 0),
        format!(
            "ring estimate {}/{}, modulator estimate {}/{}, off-path bound {}/{}, one per module {}/{} violations/checks",
            violations[0], checked[0], violations[1], checked[1], violations[2], checked[2], violations[3], checked[3]
        ),
    )
}

/// Minimises `k` with the structural solver, then re-decides `k*` and
/// `k* - 1` by brute force under the same time budget. When brute force
/// finishes, decisions must agree; when it runs out of time, the structural
/// run must have used at most a tenth of the budget.
fn perf_case(name: &str, g: &Graph, kind: SolverKind, budget: Duration, caps: &Caps) -> (bool, String) {
    let dist = DistanceMatrix::new(g);
    let start = Instant::now();
    let (k_star, answer, _) = minimize_k(g, &dist, kind, caps).unwrap();
    let witness = answer.witness.expect("minimum is a yes answer");
    let ours = start.elapsed();
    let mut ok = ours <= budget && witness.is_valid_for(&dist, k_star);
    let mut brute_note = String::new();
    if kind == SolverKind::Brute {
        brute_note.push_str("is the enumeration solver");
    } else {
        let ks = [Some(k_star), k_star.checked_sub(1)];
        let deadline = Instant::now() + budget;
        let mut timed_out = false;
        for k in ks.into_iter().flatten() {
            let q = MespQuery::new(g, &dist, k).with_deadline(deadline);
            match solve_bruteforce(&q) {
                Ok(ans) => ok &= ans.decision == (k == k_star),
                Err(Error::Timeout) => timed_out = true,
                Err(e) => panic!("{e}"),
            }
        }
        if timed_out {
            ok &= ours * PERF_SPEEDUP <= budget;
            brute_note.push_str("timed out");
        } else {
            brute_note.push_str("agrees");
        }
    }
    (
        ok,
        format!("{name} n={} k*={k_star} in {:.2}s (budget {}s), brute force {brute_note}", g.n(), ours.as_secs_f64(), budget.as_secs()),
    )
}

fn performance_smoke() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x9e4f);
    let caps = Caps::default();
    let mut parts = Vec::new();
    let mut ok = true;

    let (n, p, budget) = PERF_CLUSTER;
    let inst = cluster_plus_p(n, p, 12, 0.05, &mut rng);
    let (pass, line) = perf_case("cluster", &inst.graph, SolverKind::Cluster, budget, &Caps { p, ..caps });
    ok &= pass;
    parts.push(line);

    let (n, size, budget) = PERF_SUBSTITUTION;
    let pattern = random_prime_pattern(size, &mut rng);
    let mut sizes = vec![1; size];
    for _ in 0..n - size {
        let i = rng.gen_range(0..size);
        sizes[i] += 1;
    }
    let sub = substitution_with_sizes(&pattern, &sizes, &mut rng);
    let (pass, line) = perf_case("substitution", &sub.graph, SolverKind::ModularWidth, budget, &caps);
    ok &= pass;
    parts.push(line);

    let (n, core, budget) = PERF_SUBDIVIDED;
    let sd = subdivided_core(core, 4, n, &mut rng);
    let (pass, line) = perf_case("subdivided", &sd.graph, SolverKind::Brute, budget, &caps);
    ok &= pass;
    parts.push(line);

    outcome(ok, parts.join("; "))
}
