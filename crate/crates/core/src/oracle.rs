//! Brute-force checks on finite chains.
//!
//! Every finite chain of size `n` is isomorphic to `0 < 1 < … < n−1`, so the
//! exhaustive suites run one chain per size and spend their effort on subsets.
//! Failures are recorded as command lines that rerun the single failing case.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::duality::{
    dual_inclusion, embed_in_double_dual, k_finite, line_in_double_dual,
    projection_from_right_inverse, right_inverse_from_gaps, x_finite, IncreasingMap,
};
use crate::order::FiniteOrder;

/// Largest chain [`all_final_segments`] accepts by default.
pub const SEGMENT_BOUND: usize = 12;
/// Largest number of candidate functions [`all_increasing_maps`] scans by default.
pub const MAP_BOUND: u64 = 1 << 22;
/// Largest `n_max` the exhaustive suites accept.
pub const SUITE_BOUND: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("{what} of {requested} exceeds the bound {bound}")]
    BoundExceeded {
        what: &'static str,
        requested: u64,
        bound: u64,
    },
    #[error("invalid case `{0}`")]
    InvalidCase(String),
}

/// Result of an exhaustive suite.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleReport {
    pub instance: String,
    pub property: String,
    pub cases: u64,
    /// Command lines replaying each failing case, with the reason as a comment.
    pub failures: Vec<String>,
}

impl OracleReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn bound(what: &'static str, requested: u64, limit: u64) -> Result<(), OracleError> {
    if requested > limit {
        Err(OracleError::BoundExceeded {
            what,
            requested,
            bound: limit,
        })
    } else {
        Ok(())
    }
}

/// Every upward-closed subset of `x`, found by scanning all `2^|x|` subsets,
/// sorted by inverse inclusion.
pub fn all_final_segments<L: Clone + PartialEq>(x: &FiniteOrder<L>) -> Result<Vec<Vec<L>>, OracleError> {
    all_final_segments_bounded(x, SEGMENT_BOUND)
}

pub fn all_final_segments_bounded<L: Clone + PartialEq>(
    x: &FiniteOrder<L>,
    limit: usize,
) -> Result<Vec<Vec<L>>, OracleError> {
    let n = x.len();
    bound("chain size", n as u64, limit as u64)?;
    let mut found: Vec<u64> = (0..1u64 << n)
        .filter(|mask| (0..n).all(|i| mask >> i & 1 == 0 || (i..n).all(|j| mask >> j & 1 == 1)))
        .collect();
    // inverse inclusion on final segments: more members means lower
    found.sort_by_key(|mask| std::cmp::Reverse(mask.count_ones()));
    Ok(found
        .into_iter()
        .map(|mask| x.select_mask(mask).into_labels())
        .collect())
}

/// Every monotone function `x → y`, found by scanning all `|y|^|x|` functions.
pub fn all_increasing_maps<A: Clone, B: Clone>(
    x: &FiniteOrder<A>,
    y: &FiniteOrder<B>,
) -> Result<Vec<IncreasingMap<A, B>>, OracleError> {
    all_increasing_maps_bounded(x, y, MAP_BOUND)
}

pub fn all_increasing_maps_bounded<A: Clone, B: Clone>(
    x: &FiniteOrder<A>,
    y: &FiniteOrder<B>,
    limit: u64,
) -> Result<Vec<IncreasingMap<A, B>>, OracleError> {
    let (n, m) = (x.len() as u32, y.len() as u64);
    let total = m.checked_pow(n).unwrap_or(u64::MAX);
    bound("function count", total, limit)?;
    let mut maps = Vec::new();
    for code in 0..total {
        let images: Vec<usize> = (0..n)
            .scan(code, |rest, _| {
                let digit = (*rest % m) as usize;
                *rest /= m;
                Some(digit)
            })
            .collect();
        if images.windows(2).all(|w| w[0] <= w[1]) {
            maps.push(
                IncreasingMap::new(x.clone(), y.clone(), images).expect("checked monotone"),
            );
        }
    }
    Ok(maps)
}

/// The unique isomorphism between two finite chains, if they have equal size.
pub fn check_iso<A: Clone, B: Clone>(
    x: &FiniteOrder<A>,
    y: &FiniteOrder<B>,
) -> Option<IncreasingMap<A, B>> {
    (x.len() == y.len())
        .then(|| IncreasingMap::new(x.clone(), y.clone(), (0..x.len()).collect()).expect("identity"))
}

/// One case of a suite: a chain size and up to two nested subsets, given by
/// positions. Written `n`, `n:Y` or `n:Y:Z` with comma-separated positions.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OracleCase {
    pub n: usize,
    pub subsets: Vec<Vec<usize>>,
}

impl OracleCase {
    fn masks(n: usize, masks: &[u64]) -> Self {
        OracleCase {
            n,
            subsets: masks
                .iter()
                .map(|m| (0..n).filter(|i| m >> i & 1 == 1).collect())
                .collect(),
        }
    }

    fn subset(&self, k: usize) -> Option<FiniteOrder<usize>> {
        self.subsets.get(k).map(|s| FiniteOrder::chain(self.n).select(s))
    }
}

impl fmt::Display for OracleCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.n)?;
        for s in &self.subsets {
            let parts: Vec<String> = s.iter().map(usize::to_string).collect();
            write!(f, ":{}", parts.join(","))?;
        }
        Ok(())
    }
}

impl FromStr for OracleCase {
    type Err = OracleError;

    fn from_str(s: &str) -> Result<Self, OracleError> {
        let invalid = || OracleError::InvalidCase(s.to_string());
        let mut parts = s.trim().split(':');
        let n: usize = parts.next().and_then(|p| p.parse().ok()).ok_or_else(invalid)?;
        bound("chain size", n as u64, SUITE_BOUND as u64)?;
        let mut subsets: Vec<Vec<usize>> = Vec::new();
        for part in parts {
            let mut s: Vec<usize> = if part.is_empty() {
                Vec::new()
            } else {
                part.split(',')
                    .map(|p| p.trim().parse().map_err(|_| invalid()))
                    .collect::<Result<_, _>>()?
            };
            s.sort_unstable();
            s.dedup();
            let outside = |i: &usize| *i >= n || subsets.last().is_some_and(|o| !o.contains(i));
            if s.iter().any(outside) {
                return Err(invalid());
            }
            subsets.push(s);
        }
        if subsets.len() > 2 {
            return Err(invalid());
        }
        Ok(OracleCase { n, subsets })
    }
}

/// A deliberate defect in the `K` construction, for mutation testing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mutation {
    /// Drop the last final segment (the empty one) from `K(X)`.
    DropSegment,
}

impl Mutation {
    pub fn name(self) -> &'static str {
        match self {
            Mutation::DropSegment => "drop-segment",
        }
    }

    fn apply(self, mut points: Vec<Vec<usize>>) -> Vec<Vec<usize>> {
        match self {
            Mutation::DropSegment => {
                points.pop();
                points
            }
        }
    }
}

fn build_k(x: &FiniteOrder<usize>, mutation: Option<Mutation>) -> FiniteOrder<Vec<usize>> {
    let points = k_finite(x).points().labels().to_vec();
    let points = match mutation {
        Some(m) => m.apply(points),
        None => points,
    };
    FiniteOrder::new(points).expect("final segments are distinct")
}

fn fail(what: impl fmt::Display) -> Result<(), String> {
    Err(what.to_string())
}

/// Checks one duality case.
///
/// `n` alone checks `K(X)` against the brute-force segment list and both
/// round trips on the chain of size `n`, and that the identity dualizes to the
/// identity. `n:Y:Z` checks that the dual of
/// `Z ⊆ X` factors as the dual of `Z ⊆ Y` after the dual of `Y ⊆ X`, and that
/// each dual inclusion sends `F` to `F ∩ Y`.
pub fn run_duality_case(case: &OracleCase, mutation: Option<Mutation>) -> Result<(), String> {
    let x = FiniteOrder::chain(case.n);
    let k = build_k(&x, mutation);
    let (Some(y), Some(z)) = (case.subset(0), case.subset(1)) else {
        if case.subsets.is_empty() {
            return run_round_trips(&x, &k);
        }
        return fail("a functoriality case needs both Y and Z");
    };
    let f_xy = dual_inclusion(&x, &y).map_err(|e| e.to_string())?;
    let f_yz = dual_inclusion(&y, &z).map_err(|e| e.to_string())?;
    let f_xz = dual_inclusion(&x, &z).map_err(|e| e.to_string())?;
    if f_xy.domain().labels() != k.labels() {
        return fail("K(X) differs from the brute-force final segments");
    }
    let composed = f_yz.compose(&f_xy).map_err(|e| e.to_string())?;
    if composed != f_xz {
        return fail("dual of Z ⊆ X is not the composite through Y");
    }
    for (inner, f) in [(&y, &f_xy), (&z, &f_xz)] {
        for (seg, &j) in f.domain().iter().zip(f.images()) {
            let cut: Vec<usize> = seg.iter().copied().filter(|a| inner.contains(a)).collect();
            if f.codomain().get(j) != Some(&cut) {
                return fail("dual inclusion does not send F to F ∩ Y");
            }
        }
    }
    Ok(())
}

fn run_round_trips(x: &FiniteOrder<usize>, k: &FiniteOrder<Vec<usize>>) -> Result<(), String> {
    let brute = all_final_segments(x).map_err(|e| e.to_string())?;
    if k.labels() != brute.as_slice() {
        return fail("K(X) differs from the brute-force final segments");
    }
    let xk = x_finite(k).map_err(|e| e.to_string())?;
    if check_iso(x, &xk).is_none() {
        return fail(format!("X(K(X)) has {} points, X has {}", xk.len(), x.len()));
    }
    if !embed_in_double_dual(x).map_err(|e| e.to_string())?.is_bijective() {
        return fail("canonical map X → X(K(X)) is not an isomorphism");
    }
    let kk = k_finite(&xk);
    if check_iso(k, kk.points()).is_none() {
        return fail("K(X(K)) is not isomorphic to K");
    }
    if !line_in_double_dual(k).map_err(|e| e.to_string())?.is_bijective() {
        return fail("canonical map K → K(X(K)) is not an isomorphism");
    }
    if !dual_inclusion(x, x).map_err(|e| e.to_string())?.is_identity() {
        return fail("dual of the identity is not the identity");
    }
    Ok(())
}

/// Checks the fiber recipe and the projection for `Y ⊆ X` (case `n:Y`).
pub fn run_lemma33_case(case: &OracleCase) -> Result<(), String> {
    let x = FiniteOrder::chain(case.n);
    let Some(y) = case.subset(0) else {
        return fail("a case needs a subset Y");
    };
    let f = dual_inclusion(&x, &y).map_err(|e| e.to_string())?;
    let g = right_inverse_from_gaps(&f).map_err(|e| e.to_string())?;
    if !g.images().windows(2).all(|w| w[0] <= w[1]) {
        return fail("g is not increasing");
    }
    if !f.compose(&g).map_err(|e| e.to_string())?.is_identity() {
        return fail("f ∘ g is not the identity");
    }
    let p = projection_from_right_inverse(&x, &y, &g).map_err(|e| e.to_string())?;
    if !p.images().windows(2).all(|w| w[0] <= w[1]) {
        return fail("p is not increasing");
    }
    let hull: Vec<usize> = match (y.first(), y.last()) {
        (Some(&lo), Some(&hi)) => (lo..=hi).collect(),
        _ => Vec::new(),
    };
    if p.domain().labels() != hull.as_slice() {
        return fail("p is not defined on the convex hull of Y");
    }
    if let Some(a) = y.iter().find(|a| p.apply(a) != Some(a)) {
        return fail(format!("p moves {a} ∈ Y"));
    }
    Ok(())
}

fn check_suite_bound(n_max: usize) -> Result<(), OracleError> {
    bound("n_max", n_max as u64, SUITE_BOUND as u64)
}

/// The command line rerunning one case, with `reason` as a trailing comment.
pub fn replay_command(suite: &str, case: &OracleCase, mutation: Option<Mutation>, reason: &str) -> String {
    let extra = mutation.map_or(String::new(), |m| format!(" --mutate {}", m.name()));
    format!("compact-lines oracle {suite} --case {case}{extra}  # {reason}")
}

/// All duality cases for chains of size at most `n_max`.
pub fn duality_cases(n_max: usize) -> impl Iterator<Item = OracleCase> {
    (0..=n_max).flat_map(|n| {
        let round_trip = std::iter::once(OracleCase { n, subsets: Vec::new() });
        let nested = (0..1u64 << n).flat_map(move |y| {
            // every z ⊆ y, by enumerating submasks
            (0..=y)
                .filter(move |z| z & !y == 0)
                .map(move |z| OracleCase::masks(n, &[y, z]))
        });
        round_trip.chain(nested)
    })
}

/// All `Y ⊆ X` cases for chains of size at most `n_max`: `Σ 2^n` of them.
pub fn lemma33_cases(n_max: usize) -> impl Iterator<Item = OracleCase> {
    (0..=n_max).flat_map(|n| (0..1u64 << n).map(move |y| OracleCase::masks(n, &[y])))
}

pub fn exhaustive_duality(n_max: usize) -> Result<OracleReport, OracleError> {
    exhaustive_duality_with(n_max, None)
}

/// [`exhaustive_duality`] with an optional defect injected into `K`.
pub fn exhaustive_duality_with(
    n_max: usize,
    mutation: Option<Mutation>,
) -> Result<OracleReport, OracleError> {
    check_suite_bound(n_max)?;
    let mut report = OracleReport {
        instance: format!("chains of size 0..={n_max}"),
        property: "duality".into(),
        cases: 0,
        failures: Vec::new(),
    };
    for case in duality_cases(n_max) {
        report.cases += 1;
        if let Err(reason) = run_duality_case(&case, mutation) {
            report.failures.push(replay_command("duality", &case, mutation, &reason));
        }
    }
    Ok(report)
}

pub fn exhaustive_lemma33(n_max: usize) -> Result<OracleReport, OracleError> {
    check_suite_bound(n_max)?;
    let mut report = OracleReport {
        instance: format!("chains of size 0..={n_max}, all subsets"),
        property: "lemma33".into(),
        cases: 0,
        failures: Vec::new(),
    };
    for case in lemma33_cases(n_max) {
        report.cases += 1;
        if let Err(reason) = run_lemma33_case(&case) {
            report.failures.push(replay_command("lemma33", &case, None, &reason));
        }
    }
    Ok(report)
}
