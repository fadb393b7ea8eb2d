//! The lexicographically ordered space of finite-support rational vectors over
//! ordinals below ω², extended by gap fillers `y_δ`.
//!
//! For a limit `δ`, the level `X_δ` consists of the points whose support is
//! bounded by some `γ < δ`. The filler `y_δ` sits outside `X_δ` but strictly
//! between the part of `X_δ` below it (no maximum) and the part above it (no
//! minimum). The witness functions here produce those unbounded chains
//! explicitly, and [`truncate_projection`] is the increasing projection onto a
//! level, which fails exactly at `y_δ`.

mod point;
mod presentation;
mod stream;

use std::cmp::Ordering;
use std::fmt;

use thiserror::Error;

use crate::ordinal::OrdCode;
use crate::rational::int;

pub use point::{lex_between, lex_compare, FinSuppVec, KurepaPoint, PointParseError};
pub use presentation::{build_filtration_presentation, FiltrationLevel, KurepaFiltration};
pub use stream::{sup_stable_stream, StreamProbe};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KurepaError {
    #[error("{0} is not a limit ordinal")]
    NotLimit(OrdCode),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("restriction of y({0}) below {0} has infinite support")]
    InfiniteTruncation(OrdCode),
    #[error("coordinate {coord} changes at index {changed_at} after claimed stabilization index {claimed}")]
    StabilizationViolation {
        coord: OrdCode,
        claimed: usize,
        changed_at: usize,
    },
    #[error("stream decreases between indices {index} and {}", index + 1)]
    NotIncreasing { index: usize },
    #[error("assembled supremum has {found} support coordinates, above the declared bound {bound}")]
    InfiniteSupportSuspected { found: usize, bound: usize },
    #[error("assembled supremum is below stream term {index}")]
    NotUpperBound { index: usize },
    #[error("assembled supremum exceeds the supplied upper bound {0}")]
    NotLeast(String),
    #[error("witness construction for y({delta}) failed its strictness re-check")]
    WitnessCheckFailed { delta: OrdCode },
}

/// Membership in `X_δ = {x : ∃γ < δ, suppt x ⊆ γ}`.
pub fn in_filtration(p: &KurepaPoint, delta: OrdCode) -> bool {
    match p {
        KurepaPoint::Vec(v) => {
            let least_bound = v.max_coord().map_or(OrdCode::ZERO, OrdCode::succ);
            least_bound < delta
        }
        // the least γ containing c_λ is λ itself
        KurepaPoint::Y(lambda) => *lambda < delta,
    }
}

/// A point of the space extended by two endpoints.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum SignedPoint {
    NegInf,
    Point(KurepaPoint),
    PosInf,
}

impl Ord for SignedPoint {
    fn cmp(&self, other: &Self) -> Ordering {
        use SignedPoint::*;
        match (self, other) {
            (NegInf, NegInf) | (PosInf, PosInf) => Ordering::Equal,
            (NegInf, _) | (_, PosInf) => Ordering::Less,
            (_, NegInf) | (PosInf, _) => Ordering::Greater,
            (Point(p), Point(q)) => lex_compare(p, q),
        }
    }
}

impl PartialOrd for SignedPoint {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for SignedPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SignedPoint::NegInf => f.write_str("-inf"),
            SignedPoint::Point(p) => p.fmt(f),
            SignedPoint::PosInf => f.write_str("+inf"),
        }
    }
}

/// Coordinates admitted by level `X_δ`: those strictly below this bound.
fn level_bound(delta: OrdCode) -> OrdCode {
    delta.pred().unwrap_or(delta)
}

/// The increasing projection of the whole space onto `X_δ ∪ {−∞, +∞}`.
///
/// Concretely this is restriction to the coordinates admitted by `X_δ`; it is the
/// identity on `X_δ`. Points outside the convex hull of `X_δ` go to `±∞`, which
/// only happens for `δ = 1` where `X_1 = {0}`.
pub fn truncate_projection(p: &KurepaPoint, delta: OrdCode) -> Result<SignedPoint, KurepaError> {
    if delta.is_zero() {
        return Err(KurepaError::PreconditionViolated(
            "level 0 is empty and has no projection".into(),
        ));
    }
    if delta == OrdCode::finite(1) {
        return Ok(match lex_compare(p, &KurepaPoint::zero()) {
            Ordering::Less => SignedPoint::NegInf,
            Ordering::Equal => SignedPoint::Point(KurepaPoint::zero()),
            Ordering::Greater => SignedPoint::PosInf,
        });
    }
    match p {
        KurepaPoint::Y(lambda) if *lambda < delta => Ok(SignedPoint::Point(p.clone())),
        KurepaPoint::Y(lambda) if *lambda == delta => Err(KurepaError::InfiniteTruncation(delta)),
        _ => {
            let v = p
                .restrict_below(level_bound(delta))
                .expect("gap fillers above the level restrict to finite vectors");
            Ok(SignedPoint::Point(KurepaPoint::Vec(v)))
        }
    }
}

fn check_gap_side(
    delta: OrdCode,
    x: &KurepaPoint,
    want: Ordering,
) -> Result<(KurepaPoint, OrdCode), KurepaError> {
    let y = KurepaPoint::y(delta)?;
    if !in_filtration(x, delta) {
        return Err(KurepaError::PreconditionViolated(format!(
            "{x} is not in level {delta}"
        )));
    }
    if lex_compare(x, &y) != want {
        let side = if want == Ordering::Less { "below" } else { "above" };
        return Err(KurepaError::PreconditionViolated(format!(
            "{x} is not strictly {side} y({delta})"
        )));
    }
    let alpha = x.first_difference(&y).expect("x differs from y");
    Ok((y, alpha))
}

fn fs_prefix(delta: OrdCode, through: u64) -> impl Iterator<Item = OrdCode> {
    (0..=through).map(move |n| delta.fundamental(n).expect("limit"))
}

/// Some `a′ ∈ X_δ` with `a < a′ < y_δ`.
///
/// The result is the indicator of the fundamental sequence of `δ` up to the
/// first term at or above the first difference of `a` and `y_δ`.
pub fn gap_witness_left(delta: OrdCode, a: &KurepaPoint) -> Result<KurepaPoint, KurepaError> {
    let (y, alpha) = check_gap_side(delta, a, Ordering::Less)?;
    let n = delta
        .fundamental_ceiling(alpha)
        .expect("first difference lies below delta");
    let witness = KurepaPoint::Vec(FinSuppVec::indicator(fs_prefix(delta, n)));
    if lex_compare(a, &witness) == Ordering::Less && lex_compare(&witness, &y) == Ordering::Less {
        Ok(witness)
    } else {
        Err(KurepaError::WitnessCheckFailed { delta })
    }
}

/// Some `b′ ∈ X_δ` with `y_δ < b′ < b`.
///
/// Agrees with `y_δ` up to the first fundamental term at or above the first
/// difference, and takes the value 2 at the next term.
pub fn gap_witness_right(delta: OrdCode, b: &KurepaPoint) -> Result<KurepaPoint, KurepaError> {
    let (y, alpha) = check_gap_side(delta, b, Ordering::Greater)?;
    let n = delta
        .fundamental_ceiling(alpha)
        .expect("first difference lies below delta");
    let mut v = FinSuppVec::indicator(fs_prefix(delta, n));
    v.set(delta.fundamental(n + 1).expect("limit"), int(2));
    let witness = KurepaPoint::Vec(v);
    if lex_compare(&y, &witness) == Ordering::Less && lex_compare(&witness, b) == Ordering::Less {
        Ok(witness)
    } else {
        Err(KurepaError::WitnessCheckFailed { delta })
    }
}
