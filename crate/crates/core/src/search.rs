//! Exact minimum label count on small rectangular patches of the grid.
//!
//! Iterative deepening on the label count `lambda`: each probe is a
//! depth-first search over vertices in row-major order with labels tried in
//! ascending order, pruning by forward checking (a label assignment removes
//! the conflicting labels from the domains of later vertices within distance
//! `k`). The only symmetry broken is the reflection `l -> lambda - 1 - l`,
//! which preserves the constraint, so the first vertex takes a label in the
//! lower half.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::lattice::{manhattan_distance, Vertex};
use crate::scheme::{lambda_ub, scheme_params};
use crate::verifier::check_labeling;

/// Largest patch the search accepts.
pub const MAX_PATCH_VERTICES: usize = 64;

pub const DEFAULT_NODE_BUDGET: u64 = 10_000_000;

/// The finite patch `[0, cols) x [0, rows)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Patch {
    rows: usize,
    cols: usize,
}

impl Patch {
    pub fn new(rows: usize, cols: usize) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::InvalidPatch {
                rows,
                cols,
                reason: "dimensions must be positive",
            });
        }
        if rows.saturating_mul(cols) > MAX_PATCH_VERTICES {
            return Err(Error::InvalidPatch {
                rows,
                cols,
                reason: "more than 64 vertices",
            });
        }
        Ok(Patch { rows, cols })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn len(&self) -> usize {
        self.rows * self.cols
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, v: Vertex) -> bool {
        (0..self.cols as i64).contains(&v.x) && (0..self.rows as i64).contains(&v.y)
    }

    /// Vertices in row-major order: `y` ascending, then `x` ascending.
    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        (0..self.rows as i64)
            .flat_map(move |y| (0..self.cols as i64).map(move |x| Vertex::new(x, y)))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PatchSearchResult {
    /// Smallest label count found; optimal when `exhausted`.
    pub minimal_lambda: u32,
    /// A valid labeling of the patch with labels in `[0, minimal_lambda)`.
    pub certificate: BTreeMap<Vertex, u32>,
    pub nodes_explored: u64,
    /// True iff every smaller label count was proven infeasible.
    pub exhausted: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Feasibility {
    Feasible(BTreeMap<Vertex, u32>),
    Infeasible,
    /// The node budget ran out first.
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Probe {
    pub outcome: Feasibility,
    pub nodes: u64,
}

/// Decides whether the patch admits a labeling with `lambda` labels.
pub fn probe(patch: &Patch, k: u32, lambda: u32, node_budget: u64) -> Result<Probe> {
    if k == 0 {
        return Err(Error::ZeroK);
    }
    let mut solver = Solver::new(patch, k, lambda, node_budget);
    let outcome = match solver.run() {
        Some(true) => Feasibility::Feasible(solver.certificate(patch)),
        Some(false) => Feasibility::Infeasible,
        None => Feasibility::Unknown,
    };
    Ok(Probe {
        outcome,
        nodes: solver.nodes,
    })
}

/// Size of the largest clique found among balls of radius `floor(k/2)` and,
/// for odd `k`, two-centered balls of radius `(k-1)/2`, intersected with the
/// patch. Every pair in such a set is within distance `k`, so all labels
/// differ.
pub fn clique_lower_bound(patch: &Patch, k: u32) -> u32 {
    let radius = u64::from(k / 2);
    let r = radius as i64;
    let vertices: Vec<Vertex> = patch.vertices().collect();
    let mut best = 1usize;
    for cy in -r..patch.rows as i64 + r {
        for cx in -r..patch.cols as i64 + r {
            let c = Vertex::new(cx, cy);
            let count = |centers: &[Vertex], reach: u64| {
                vertices
                    .iter()
                    .filter(|&&v| centers.iter().any(|&z| manhattan_distance(v, z) <= reach))
                    .count()
            };
            best = best.max(count(&[c], radius));
            if k % 2 == 1 {
                best = best.max(count(&[c, c + Vertex::new(0, 1)], radius));
                best = best.max(count(&[c, c + Vertex::new(1, 0)], radius));
            }
        }
    }
    best as u32
}

/// A feasible labeling known without search: the formula scheme when it is
/// valid on this patch and cheaper, otherwise vertex `i` gets `i * k`.
fn fallback(patch: &Patch, k: u32) -> (u32, BTreeMap<Vertex, u32>) {
    let n = patch.len() as u32;
    let mut best = (
        (n - 1) * k + 1,
        patch
            .vertices()
            .zip((0..).map(|i: u32| i * k))
            .collect::<BTreeMap<_, _>>(),
    );
    if let Ok(scheme) = scheme_params::<i64>(k) {
        let c = *scheme.c();
        if c < i64::from(best.0) {
            let labels: BTreeMap<Vertex, u32> = patch
                .vertices()
                .map(|v| (v, scheme.label(v).expect("small patch").into_inner() as u32))
                .collect();
            if check_labeling(k, labels.iter().map(|(&v, &l)| (v, i64::from(l))), 1).passed {
                best = (c as u32, labels);
            }
        }
    }
    best
}

/// Minimum label count of the patch, by iterative deepening from
/// [`clique_lower_bound`]. Returns the best known labeling with
/// `exhausted = false` if the node budget runs out.
pub fn exact_span(patch: &Patch, k: u32, node_budget: u64) -> Result<PatchSearchResult> {
    if k == 0 {
        return Err(Error::ZeroK);
    }
    let (known_lambda, known_cert) = fallback(patch, k);
    let mut nodes = 0u64;
    for lambda in clique_lower_bound(patch, k)..known_lambda {
        let p = probe(patch, k, lambda, node_budget - nodes)?;
        nodes += p.nodes;
        match p.outcome {
            Feasibility::Feasible(certificate) => {
                return Ok(PatchSearchResult {
                    minimal_lambda: lambda,
                    certificate,
                    nodes_explored: nodes,
                    exhausted: true,
                })
            }
            Feasibility::Infeasible => {}
            Feasibility::Unknown => {
                return Ok(PatchSearchResult {
                    minimal_lambda: known_lambda,
                    certificate: known_cert,
                    nodes_explored: nodes,
                    exhausted: false,
                })
            }
        }
    }
    Ok(PatchSearchResult {
        minimal_lambda: known_lambda,
        certificate: known_cert,
        nodes_explored: nodes,
        exhausted: true,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpanConsistency {
    pub patch_lambda: u32,
    pub exhausted: bool,
    pub global_ub: Option<i64>,
    /// `patch_lambda <= global_ub` when the search finished and `k` has a
    /// formula scheme; vacuously true otherwise.
    pub consistent: bool,
}

/// A finite patch never needs more labels than the whole grid.
pub fn patch_span_vs_bounds(patch: &Patch, k: u32, node_budget: u64) -> Result<SpanConsistency> {
    let result = exact_span(patch, k, node_budget)?;
    let global_ub = match lambda_ub::<i64>(k) {
        Ok(c) => Some(c),
        Err(Error::Unsupported { .. }) => None,
        Err(e) => return Err(e),
    };
    let consistent = match (result.exhausted, global_ub) {
        (true, Some(ub)) => i64::from(result.minimal_lambda) <= ub,
        _ => true,
    };
    Ok(SpanConsistency {
        patch_lambda: result.minimal_lambda,
        exhausted: result.exhausted,
        global_ub,
        consistent,
    })
}

struct Solver {
    n: usize,
    words: usize,
    lambda: u32,
    /// For each vertex, later vertices within distance k and the required gap.
    forward: Vec<Vec<(usize, u32)>>,
    /// One domain table per depth, `n * words` bits each.
    domains: Vec<Vec<u64>>,
    assigned: Vec<u32>,
    nodes: u64,
    budget: u64,
}

impl Solver {
    fn new(patch: &Patch, k: u32, lambda: u32, budget: u64) -> Self {
        let vertices: Vec<Vertex> = patch.vertices().collect();
        let n = vertices.len();
        let forward = (0..n)
            .map(|i| {
                (i + 1..n)
                    .filter_map(|j| {
                        let d = manhattan_distance(vertices[i], vertices[j]);
                        (d <= u64::from(k)).then(|| (j, k + 1 - d as u32))
                    })
                    .collect()
            })
            .collect();
        let words = (lambda as usize).div_ceil(64).max(1);
        let mut full = vec![0u64; n * words];
        for v in 0..n {
            for l in 0..lambda as usize {
                full[v * words + l / 64] |= 1 << (l % 64);
            }
        }
        let mut domains = vec![full; 1];
        domains.resize(n + 1, vec![0; n * words]);
        Solver {
            n,
            words,
            lambda,
            forward,
            domains,
            assigned: vec![0; n],
            nodes: 0,
            budget,
        }
    }

    fn run(&mut self) -> Option<bool> {
        if self.lambda == 0 {
            return Some(false);
        }
        self.descend(0)
    }

    fn certificate(&self, patch: &Patch) -> BTreeMap<Vertex, u32> {
        patch
            .vertices()
            .zip(self.assigned.iter().copied())
            .collect()
    }

    fn candidates(&self, depth: usize) -> Vec<u32> {
        let base = depth * self.words;
        let limit = if depth == 0 {
            (self.lambda - 1) / 2
        } else {
            self.lambda - 1
        };
        let mut out = Vec::new();
        for (w, &bits) in self.domains[depth][base..base + self.words]
            .iter()
            .enumerate()
        {
            let mut bits = bits;
            while bits != 0 {
                let l = (w * 64) as u32 + bits.trailing_zeros();
                if l > limit {
                    return out;
                }
                out.push(l);
                bits &= bits - 1;
            }
        }
        out
    }

    // Some(true) found, Some(false) subtree exhausted, None out of budget.
    fn descend(&mut self, depth: usize) -> Option<bool> {
        if depth == self.n {
            return Some(true);
        }
        for label in self.candidates(depth) {
            if self.nodes >= self.budget {
                return None;
            }
            self.nodes += 1;
            if !self.propagate(depth, label) {
                continue;
            }
            self.assigned[depth] = label;
            match self.descend(depth + 1) {
                Some(false) => {}
                other => return other,
            }
        }
        Some(false)
    }

    // Copies the domains to the next depth and removes labels conflicting
    // with `label` at `depth`. False on a domain wipeout.
    fn propagate(&mut self, depth: usize, label: u32) -> bool {
        let (head, tail) = self.domains.split_at_mut(depth + 1);
        let next = &mut tail[0];
        next.copy_from_slice(&head[depth]);
        for &(j, gap) in &self.forward[depth] {
            let lo = label.saturating_sub(gap - 1);
            let hi = (label + gap - 1).min(self.lambda - 1);
            let dom = &mut next[j * self.words..(j + 1) * self.words];
            clear_range(dom, lo, hi);
            if dom.iter().all(|&w| w == 0) {
                return false;
            }
        }
        true
    }
}

fn clear_range(bits: &mut [u64], lo: u32, hi: u32) {
    for l in lo..=hi {
        bits[(l / 64) as usize] &= !(1u64 << (l % 64));
    }
}
