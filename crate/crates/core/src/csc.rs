//! Constrained Set Cover: pick exactly one candidate from every group so that
//! the chosen satisfaction sets cover all requirements.
//!
//! [`CscTable`] holds one reachability layer per group over all `2^r`
//! requirement subsets. Layer `i` marks a subset `Q` reachable when some
//! choice from the first `i` groups covers `Q`, and records a candidate of
//! group `i` that takes part in such a choice. Because reachability is
//! closed under taking subsets, a finished table answers cover queries for
//! every target subset, not only the full requirement set.

use std::fmt::Write as _;

use crate::error::{Error, Result};

/// Bitmask over requirement indices `0..r`.
pub type ReqSet = u64;

/// Largest requirement count accepted by default (`2^26` entries per layer).
pub const DEFAULT_REQUIREMENT_CAP: usize = 26;

/// Largest tuple count the brute-force oracle will enumerate by default.
pub const DEFAULT_TUPLE_CAP: u64 = 1 << 24;

const UNREACHABLE: u32 = u32::MAX;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Candidate {
    /// Opaque id the caller uses to map a choice back to its own objects.
    pub payload: usize,
    pub satisfies: ReqSet,
}

impl Candidate {
    pub fn new(payload: usize, satisfies: ReqSet) -> Self {
        Candidate { payload, satisfies }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CscInstance {
    requirements: usize,
    groups: Vec<Vec<Candidate>>,
}

/// One chosen candidate index per group, in group order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CscSolution {
    pub selection: Vec<usize>,
}

impl CscInstance {
    pub fn new(requirements: usize) -> Self {
        CscInstance {
            requirements,
            groups: Vec::new(),
        }
    }

    pub fn push_group(&mut self, group: Vec<Candidate>) {
        self.groups.push(group);
    }

    pub fn requirements(&self) -> usize {
        self.requirements
    }

    pub fn groups(&self) -> &[Vec<Candidate>] {
        &self.groups
    }

    pub fn full_set(&self) -> ReqSet {
        full_mask(self.requirements)
    }

    /// Union of the satisfaction sets picked by `solution`.
    pub fn covered_by(&self, solution: &CscSolution) -> ReqSet {
        self.groups
            .iter()
            .zip(&solution.selection)
            .fold(0, |acc, (g, &i)| acc | g[i].satisfies)
    }

    pub fn payloads(&self, solution: &CscSolution) -> Vec<usize> {
        self.groups
            .iter()
            .zip(&solution.selection)
            .map(|(g, &i)| g[i].payload)
            .collect()
    }

    /// Parses the debug format: `r m`, then for each group a line holding
    /// its size `g`, followed by `g` lines of space-separated requirement
    /// indices (an empty line is an empty satisfaction set). Payloads are the
    /// candidate positions within their group.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim()));
        let (line, header) = lines
            .by_ref()
            .find(|(_, l)| !l.is_empty())
            .ok_or_else(|| Error::parse(1, "empty input"))?;
        let mut fields = header.split_whitespace();
        let r = parse_usize(fields.next(), line)?;
        let m = parse_usize(fields.next(), line)?;
        if r > 63 {
            return Err(Error::parse(line, "at most 63 requirements"));
        }
        let mut inst = CscInstance::new(r);
        for _ in 0..m {
            let (line, size) = lines
                .by_ref()
                .find(|(_, l)| !l.is_empty())
                .ok_or_else(|| Error::parse(0, "missing group header"))?;
            let size = parse_usize(Some(size), line)?;
            let mut group = Vec::with_capacity(size);
            for payload in 0..size {
                let (line, l) = lines
                    .next()
                    .ok_or_else(|| Error::parse(line, "group ends early"))?;
                let mut mask = 0;
                for tok in l.split_whitespace() {
                    let req = parse_usize(Some(tok), line)?;
                    if req >= r {
                        return Err(Error::parse(line, format!("requirement {req} out of range")));
                    }
                    mask |= 1 << req;
                }
                group.push(Candidate::new(payload, mask));
            }
            inst.push_group(group);
        }
        Ok(inst)
    }

    pub fn to_debug_string(&self) -> String {
        let mut out = format!("{} {}\n", self.requirements, self.groups.len());
        for g in &self.groups {
            let _ = writeln!(out, "{}", g.len());
            for c in g {
                let reqs: Vec<String> = (0..self.requirements)
                    .filter(|&b| c.satisfies >> b & 1 == 1)
                    .map(|b| b.to_string())
                    .collect();
                let _ = writeln!(out, "{}", reqs.join(" "));
            }
        }
        out
    }
}

fn parse_usize(tok: Option<&str>, line: usize) -> Result<usize> {
    let tok = tok.ok_or_else(|| Error::parse(line, "missing number"))?;
    tok.parse()
        .map_err(|_| Error::parse(line, format!("invalid number `{tok}`")))
}

fn full_mask(r: usize) -> ReqSet {
    if r >= 64 {
        ReqSet::MAX
    } else {
        (1 << r) - 1
    }
}

/// The filled dynamic-programming layers for one instance.
#[derive(Clone, Debug)]
pub struct CscTable<'a> {
    inst: &'a CscInstance,
    // layers[i] is the layer after group i; the empty-prefix layer is implicit.
    layers: Vec<Vec<u32>>,
}

impl<'a> CscTable<'a> {
    pub fn build(inst: &'a CscInstance) -> Result<Self> {
        Self::build_with_cap(inst, DEFAULT_REQUIREMENT_CAP)
    }

    pub fn build_with_cap(inst: &'a CscInstance, cap: usize) -> Result<Self> {
        let r = inst.requirements;
        if r > cap || r > 32 {
            return Err(Error::Capacity {
                what: "requirement count",
                value: r as u64,
                cap: cap.min(32) as u64,
            });
        }
        let size = 1usize << r;
        let mut layers: Vec<Vec<u32>> = Vec::with_capacity(inst.groups.len());
        for group in &inst.groups {
            let mut next = vec![UNREACHABLE; size];
            if group.is_empty() {
                // Nothing is reachable past an empty group.
                layers.push(next);
                continue;
            }
            let prev = layers.last();
            for (ci, cand) in group.iter().enumerate() {
                let sat = cand.satisfies as usize;
                match prev {
                    None => {
                        if next[sat] == UNREACHABLE {
                            next[sat] = ci as u32;
                        }
                    }
                    Some(prev) => {
                        for (q, &w) in prev.iter().enumerate() {
                            if w != UNREACHABLE && next[q | sat] == UNREACHABLE {
                                next[q | sat] = ci as u32;
                            }
                        }
                    }
                }
            }
            downward_close(&mut next, r);
            layers.push(next);
        }
        Ok(CscTable { inst, layers })
    }

    /// Whether `target` is coverable by one candidate per group.
    pub fn is_reachable(&self, target: ReqSet) -> bool {
        match self.layers.last() {
            Some(layer) => layer[target as usize] != UNREACHABLE,
            None => target == 0,
        }
    }

    /// A selection covering `target`, or `None` when no selection does.
    ///
    /// Walks the layers from last to first; each step asks the layer for
    /// the requirements that the later choices have not yet covered.
    pub fn solve_for(&self, target: ReqSet) -> Option<CscSolution> {
        debug_assert_eq!(target & !self.inst.full_set(), 0);
        if !self.is_reachable(target) {
            return None;
        }
        let mut remaining = target;
        let mut selection = vec![0; self.layers.len()];
        for (i, layer) in self.layers.iter().enumerate().rev() {
            let w = layer[remaining as usize];
            debug_assert_ne!(w, UNREACHABLE);
            selection[i] = w as usize;
            remaining &= !self.inst.groups[i][w as usize].satisfies;
        }
        debug_assert_eq!(remaining, 0);
        Some(CscSolution { selection })
    }

    /// Layer `i` (after `i` groups) membership of `subset`; layer 0 holds only
    /// the empty set.
    pub fn layer_reachable(&self, i: usize, subset: ReqSet) -> bool {
        if i == 0 {
            subset == 0
        } else {
            self.layers[i - 1][subset as usize] != UNREACHABLE
        }
    }
}

/// Marks every subset of a reachable subset reachable, copying the witness.
fn downward_close(layer: &mut [u32], r: usize) {
    for b in 0..r {
        let bit = 1usize << b;
        for q in 0..layer.len() {
            if q & bit != 0 && layer[q] != UNREACHABLE && layer[q ^ bit] == UNREACHABLE {
                layer[q ^ bit] = layer[q];
            }
        }
    }
}

/// Solves the instance with the subset dynamic program.
pub fn solve_csc(inst: &CscInstance) -> Result<Option<CscSolution>> {
    let table = CscTable::build(inst)?;
    let sol = table.solve_for(inst.full_set());
    if let Some(s) = &sol {
        assert_eq!(inst.covered_by(s), inst.full_set(), "CSC selection must cover");
    }
    Ok(sol)
}

/// Tries every tuple in lexicographic order. Test oracle.
pub fn solve_csc_bruteforce(inst: &CscInstance) -> Result<Option<CscSolution>> {
    solve_csc_bruteforce_with_cap(inst, DEFAULT_TUPLE_CAP)
}

pub fn solve_csc_bruteforce_with_cap(inst: &CscInstance, cap: u64) -> Result<Option<CscSolution>> {
    let tuples = inst
        .groups
        .iter()
        .try_fold(1u64, |acc, g| acc.checked_mul(g.len() as u64));
    match tuples {
        Some(t) if t <= cap => {}
        other => {
            return Err(Error::Capacity {
                what: "tuple count",
                value: other.unwrap_or(u64::MAX),
                cap,
            })
        }
    }
    if inst.groups.iter().any(Vec::is_empty) {
        return Ok(None);
    }
    let full = inst.full_set();
    let m = inst.groups.len();
    let mut idx = vec![0usize; m];
    loop {
        let covered = inst
            .groups
            .iter()
            .zip(&idx)
            .fold(0, |acc, (g, &i)| acc | g[i].satisfies);
        if covered & full == full {
            return Ok(Some(CscSolution { selection: idx }));
        }
        // odometer step
        let mut pos = m;
        loop {
            if pos == 0 {
                return Ok(None);
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < inst.groups[pos].len() {
                break;
            }
            idx[pos] = 0;
        }
    }
}
