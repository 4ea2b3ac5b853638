use std::fmt::Write as _;
use std::time::Duration;

use mesp::solvers::{AutoChoice, Caps, SolveStats};
use serde::Serialize;

/// Generator behind `--seed`, pinned so reports stay reproducible.
pub const RNG: &str = "rand_chacha 0.3 ChaCha8Rng";

#[derive(Serialize)]
pub struct InputInfo {
    pub path: String,
    pub sha256: String,
    pub n: usize,
    pub m: usize,
}

#[derive(Serialize)]
pub struct Params {
    pub modular_width: Option<usize>,
    pub cluster_distance: Option<usize>,
    pub paths_distance: Option<usize>,
    pub shortest_paths: Option<u128>,
    pub cap_mw: usize,
    pub cap_p: usize,
    pub cap_c: usize,
}

impl Params {
    pub fn new(choice: &AutoChoice, caps: &Caps) -> Self {
        Params {
            modular_width: choice.modular_width,
            cluster_distance: choice.cluster_distance,
            paths_distance: choice.paths_distance,
            shortest_paths: choice.shortest_paths,
            cap_mw: caps.mw,
            cap_p: caps.p,
            cap_c: caps.c,
        }
    }
}

#[derive(Serialize)]
pub struct Timings {
    pub parse: f64,
    pub distances: f64,
    pub planning: f64,
    pub solve: f64,
    pub total: f64,
}

fn ms(d: Duration) -> f64 {
    d.as_secs_f64() * 1e3
}

impl Timings {
    pub fn new(parse: Duration, distances: Duration, planning: Duration, solve: Duration, total: Duration) -> Self {
        Timings {
            parse: ms(parse),
            distances: ms(distances),
            planning: ms(planning),
            solve: ms(solve),
            total: ms(total),
        }
    }
}

#[derive(Serialize)]
pub struct Counters {
    pub guesses: u64,
    pub csc_calls: u64,
    pub paths_checked: u64,
}

impl From<&SolveStats> for Counters {
    fn from(s: &SolveStats) -> Self {
        Counters { guesses: s.guesses, csc_calls: s.csc_calls, paths_checked: s.paths_checked }
    }
}

#[derive(Serialize)]
pub struct RunReport {
    pub version: &'static str,
    pub input: InputInfo,
    pub requested_solver: &'static str,
    pub solver: &'static str,
    pub params: Params,
    /// `decide` or `minimize`.
    pub mode: &'static str,
    /// The queried bound, or the minimum found.
    pub k: u32,
    pub decision: bool,
    pub witness: Option<Vec<usize>>,
    pub eccentricity: Option<u32>,
    pub timings_ms: Timings,
    pub counters: Counters,
    pub seed: Option<u64>,
    pub rng: &'static str,
}

fn list(vs: &[usize]) -> String {
    vs.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

impl RunReport {
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "decision: {}", if self.decision { "yes" } else { "no" });
        let label = if self.mode == "minimize" { "k*" } else { "k" };
        let _ = writeln!(s, "{label}: {}", self.k);
        if let Some(w) = &self.witness {
            let _ = writeln!(s, "witness: {}", list(w));
        }
        if let Some(e) = self.eccentricity {
            let _ = writeln!(s, "eccentricity: {e}");
        }
        let _ = writeln!(s, "solver: {}", self.solver);
        let _ = writeln!(s, "time: {:.3} ms", self.timings_ms.total);
        s
    }
}

#[derive(Serialize)]
pub struct VerifyReport {
    pub input: InputInfo,
    pub witness: Vec<usize>,
    pub k: u32,
    pub shortest: bool,
    pub eccentricity: Option<u32>,
    pub valid: bool,
}

impl VerifyReport {
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "valid: {}", self.valid);
        let _ = writeln!(s, "shortest: {}", self.shortest);
        match self.eccentricity {
            Some(e) => {
                let _ = writeln!(s, "eccentricity: {e} (bound {})", self.k);
            }
            None => s.push_str("eccentricity: undefined\n"),
        }
        s
    }
}
