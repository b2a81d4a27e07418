//! Decision procedures for the distance-labeling constraint
//! `|f(u) - f(v)| >= k + 1 - d(u, v)` for distinct `u`, `v` with
//! `d(u, v) <= k`.
//!
//! [`check_diamond`] is exact for a linear modular scheme: the gap between
//! any two labels equals the label of one of the two opposite offsets, so it
//! suffices to test every offset of norm `1..=k` against the origin.
//! [`check_window`] is a brute-force pairwise scan that never uses that
//! reduction, and serves as the independent cross-check.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::lattice::Vertex;
use crate::scalar::{lift, Scalar};
use crate::scheme::{LabelingScheme, ParityCase};

pub const DEFAULT_MAX_VIOLATIONS: usize = 16;

/// Default cap on label evaluations in enumerate mode (`c^2 <= 4e6`).
pub const DEFAULT_ENUMERATION_BUDGET: u64 = 4_000_000;

/// A witness that the constraint fails.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ViolationReport<T> {
    /// Difference vector, oriented so the larger label comes first.
    pub offset: Vertex,
    /// `|offset.x| + |offset.y|`, always in `1..=k`.
    pub distance: u64,
    /// `k + 1 - distance`.
    pub required_gap: u64,
    /// Observed label gap; strictly below `required_gap`.
    pub actual: T,
    /// The concrete vertex pair, for pairwise checks.
    pub pair: Option<(Vertex, Vertex)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationVerdict<T> {
    pub passed: bool,
    /// Offsets (diamond) or vertex pairs (window) examined.
    pub checked_pairs: u64,
    /// Total number of violations found, including those past the cap.
    pub violation_count: u64,
    /// The first violations in canonical order, up to the configured cap.
    pub violations: Vec<ViolationReport<T>>,
}

impl<T> VerificationVerdict<T> {
    fn new() -> Self {
        VerificationVerdict {
            passed: true,
            checked_pairs: 0,
            violation_count: 0,
            violations: Vec::new(),
        }
    }

    fn record(&mut self, report: ViolationReport<T>, cap: usize) {
        self.passed = false;
        self.violation_count += 1;
        if self.violations.len() < cap {
            self.violations.push(report);
        }
    }

    /// The reported offsets as a set.
    pub fn witness_offsets(&self) -> BTreeSet<Vertex> {
        self.violations.iter().map(|v| v.offset).collect()
    }
}

/// `|L(u) - L(v)|` computed as the label of the difference vector
/// (larger label first). Equal labels give 0.
pub fn lemma3_difference<T: Scalar>(scheme: &LabelingScheme<T>, u: Vertex, v: Vertex) -> Result<T> {
    let (lu, lv) = (scheme.label(u)?, scheme.label(v)?);
    let (hi, lo) = if lu >= lv { (u, v) } else { (v, u) };
    Ok(scheme.label(hi - lo)?.into_inner())
}

/// Checks every offset with `1 <= |x| + |y| <= k` against the origin.
pub fn check_diamond<T: Scalar>(scheme: &LabelingScheme<T>) -> Result<VerificationVerdict<T>> {
    check_diamond_capped(scheme, DEFAULT_MAX_VIOLATIONS)
}

/// [`check_diamond`] reporting at most `max_violations` witnesses, in
/// lexicographic offset order.
pub fn check_diamond_capped<T: Scalar>(
    scheme: &LabelingScheme<T>,
    max_violations: usize,
) -> Result<VerificationVerdict<T>> {
    let k = i64::from(scheme.k());
    let mut verdict = VerificationVerdict::new();
    for x in -k..=k {
        let rest = k - x.abs();
        for y in -rest..=rest {
            let offset = Vertex::new(x, y);
            let distance = offset.norm();
            if distance == 0 {
                continue;
            }
            verdict.checked_pairs += 1;
            let required_gap = scheme.k() as u64 + 1 - distance;
            let actual = scheme.label(offset)?.into_inner();
            if actual < lift(required_gap as i64) {
                verdict.record(
                    ViolationReport {
                        offset,
                        distance,
                        required_gap,
                        actual,
                        pair: None,
                    },
                    max_violations,
                );
            }
        }
    }
    Ok(verdict)
}

/// Brute-force check over all pairs of the window `[0, width) x [0, height)`.
pub fn check_window<T: Scalar>(
    scheme: &LabelingScheme<T>,
    width: usize,
    height: usize,
) -> Result<VerificationVerdict<T>> {
    check_window_at(
        scheme,
        Vertex::ORIGIN,
        width,
        height,
        DEFAULT_MAX_VIOLATIONS,
    )
}

/// Brute-force check over all pairs at distance `<= k` inside the window
/// with lower-left corner `origin`. Rectangles embed isometrically in the
/// grid, so in-window distances are grid distances.
///
/// Pairs are scanned with `u` in row-major order (`y`, then `x`) and `v`
/// after `u`; the reported violations are the first ones in that order.
pub fn check_window_at<T: Scalar>(
    scheme: &LabelingScheme<T>,
    origin: Vertex,
    width: usize,
    height: usize,
    max_violations: usize,
) -> Result<VerificationVerdict<T>> {
    if width == 0 || height == 0 {
        return Err(Error::InvalidWindow { width, height });
    }
    let mut labels = Vec::with_capacity(width * height);
    for row in 0..height as i64 {
        for col in 0..width as i64 {
            let v = Vertex::new(origin.x + col, origin.y + row);
            labels.push(scheme.label(v)?.into_inner());
        }
    }
    let lookup = |v: Vertex| {
        let (col, row) = (v.x - origin.x, v.y - origin.y);
        if col < 0 || row < 0 || col >= width as i64 || row >= height as i64 {
            None
        } else {
            Some(&labels[row as usize * width + col as usize])
        }
    };
    let vertices = (0..height as i64).flat_map(|row| {
        (0..width as i64).map(move |col| Vertex::new(origin.x + col, origin.y + row))
    });
    Ok(pairwise(scheme.k(), vertices, lookup, max_violations))
}

/// Checks an arbitrary finite labeling (e.g. parsed from a file, or a search
/// certificate) pairwise. Later entries for a repeated vertex win.
pub fn check_labeling<T: Scalar>(
    k: u32,
    assignment: impl IntoIterator<Item = (Vertex, T)>,
    max_violations: usize,
) -> VerificationVerdict<T> {
    let map: BTreeMap<Vertex, T> = assignment.into_iter().collect();
    let mut order: Vec<Vertex> = map.keys().copied().collect();
    order.sort_unstable_by_key(|v| (v.y, v.x));
    pairwise(k, order, |v| map.get(&v), max_violations)
}

fn pairwise<'a, T: Scalar>(
    k: u32,
    vertices: impl IntoIterator<Item = Vertex>,
    lookup: impl Fn(Vertex) -> Option<&'a T>,
    max_violations: usize,
) -> VerificationVerdict<T> {
    let ki = i64::from(k);
    let mut verdict = VerificationVerdict::new();
    for u in vertices {
        let Some(lu) = lookup(u) else { continue };
        // Partners after u in row-major order within distance k.
        for dy in 0..=ki {
            let reach = ki - dy;
            let dx_start = if dy == 0 { 1 } else { -reach };
            for dx in dx_start..=reach {
                let v = Vertex::new(u.x + dx, u.y + dy);
                let Some(lv) = lookup(v) else { continue };
                verdict.checked_pairs += 1;
                let distance = (dx.abs() + dy) as u64;
                let required_gap = u64::from(k) + 1 - distance;
                let gap = (lu.clone() - lv.clone()).abs();
                if gap < lift(required_gap as i64) {
                    let offset = if lu >= lv { u - v } else { v - u };
                    verdict.record(
                        ViolationReport {
                            offset,
                            distance,
                            required_gap,
                            actual: gap,
                            pair: Some((u, v)),
                        },
                        max_violations,
                    );
                }
            }
        }
    }
    verdict
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NoHoleMode {
    Gcd,
    Enumerate,
    Both,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NoHoleReport<T> {
    pub is_no_hole: bool,
    /// `gcd(a, b, c)`; the attained labels are exactly its multiples.
    pub gcd_triple: T,
    /// Number of distinct labels seen by enumeration, when it ran.
    pub attained_count: Option<u64>,
}

/// Decides whether every label in `[0, c)` is used, with the default
/// enumeration budget.
pub fn check_no_hole<T: Scalar>(
    scheme: &LabelingScheme<T>,
    mode: NoHoleMode,
) -> Result<NoHoleReport<T>> {
    check_no_hole_with_budget(scheme, mode, DEFAULT_ENUMERATION_BUDGET)
}

/// Gcd mode: no-hole iff `gcd(a, b, c) = 1`. Enumerate mode: evaluates
/// every label of the `c x c` fundamental domain, which fails with
/// [`Error::BudgetExceeded`] when `c^2 > budget`.
pub fn check_no_hole_with_budget<T: Scalar>(
    scheme: &LabelingScheme<T>,
    mode: NoHoleMode,
    budget: u64,
) -> Result<NoHoleReport<T>> {
    let gcd_triple = scheme.a().gcd(scheme.b()).gcd(scheme.c());
    let gcd_says = gcd_triple.is_one();
    let attained = match mode {
        NoHoleMode::Gcd => None,
        NoHoleMode::Enumerate | NoHoleMode::Both => Some(enumerate_labels(scheme, budget)?),
    };
    let enum_says = attained.map(|n| scheme.c().to_u64() == Some(n));
    let is_no_hole = match (mode, enum_says) {
        (NoHoleMode::Gcd, _) => gcd_says,
        (NoHoleMode::Enumerate, Some(e)) => e,
        (NoHoleMode::Both, Some(e)) if e == gcd_says => e,
        _ => return Err(Error::ModeDisagreement),
    };
    Ok(NoHoleReport {
        is_no_hole,
        gcd_triple,
        attained_count: attained,
    })
}

fn enumerate_labels<T: Scalar>(scheme: &LabelingScheme<T>, budget: u64) -> Result<u64> {
    let side = scheme.c().to_u64().unwrap_or(u64::MAX);
    let needed = u128::from(side) * u128::from(side);
    if needed > u128::from(budget) {
        return Err(Error::BudgetExceeded { needed, budget });
    }
    let mut seen = vec![false; side as usize];
    let mut count = 0u64;
    'rows: for y in 0..side as i64 {
        for x in 0..side as i64 {
            let value = scheme.label(Vertex::new(x, y))?.into_inner();
            let slot = &mut seen[value.to_usize().expect("label lies in [0, c)")];
            if !*slot {
                *slot = true;
                count += 1;
                if count == side {
                    break 'rows;
                }
            }
        }
    }
    Ok(count)
}

/// `gcd(a, b)` of the formula scheme for `k`.
pub fn gcd_ab<T: Scalar>(k: u32) -> Result<T> {
    let s = crate::scheme::scheme_params::<T>(k)?;
    Ok(s.a().gcd(s.b()))
}

/// The values `gcd(a, b)` can take in each case.
pub fn allowed_gcd_ab(case: ParityCase) -> &'static [i64] {
    match case {
        ParityCase::OddKOddP => &[1, 5],
        ParityCase::OddKEvenP | ParityCase::EvenKOddP => &[1, 3],
        ParityCase::EvenKEvenP => &[1],
    }
}
