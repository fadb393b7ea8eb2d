use std::cmp::Ordering;
use std::fmt;

use super::DualityError;
use crate::order::{self, Element, OrderError, OrderExpr};
use crate::ordinal::OrdCode;

/// A suborder `Y` of a presented order, given by membership and gap witnesses.
///
/// The witnesses drive [`fills_proper_gap`]. For `x ∉ Y`, `left_witness(x, None)`
/// is some member below `x` and `left_witness(x, Some(a))` some member strictly
/// between `a` and `x`; `None` means there is none to offer. The right side is
/// symmetric.
pub trait SubOrder {
    fn ambient(&self) -> &OrderExpr;
    fn contains(&self, x: &Element) -> bool;
    /// Up to `n` members, for spot checks.
    fn sample(&self, n: usize) -> Vec<Element>;
    fn left_witness(&self, x: &Element, current: Option<&Element>) -> Option<Element>;
    fn right_witness(&self, x: &Element, current: Option<&Element>) -> Option<Element>;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NotGapReason {
    /// `x` is itself a member.
    Member,
    /// Nothing in the suborder lies below `x`.
    NoLeft,
    /// Nothing in the suborder lies above `x`.
    NoRight,
    /// The members below `x` have a greatest element.
    MaxBelow,
    /// The members above `x` have a least element.
    MinAbove,
    /// The point is not a filler of this suborder.
    NoFiller,
}

impl NotGapReason {
    pub fn as_str(self) -> &'static str {
        match self {
            NotGapReason::Member => "member",
            NotGapReason::NoLeft => "noLeft",
            NotGapReason::NoRight => "noRight",
            NotGapReason::MaxBelow => "maxBelow",
            NotGapReason::MinAbove => "minAbove",
            NotGapReason::NoFiller => "noFiller",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GapVerdict {
    /// Both witness chains ran for the full depth.
    FillsToDepth(usize),
    NotGap(NotGapReason),
}

impl fmt::Display for GapVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GapVerdict::FillsToDepth(d) => write!(f, "FillsToDepth({d})"),
            GapVerdict::NotGap(reason) => write!(f, "NotGap({})", reason.as_str()),
        }
    }
}

/// A verdict together with the witness chains that produced it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GapProbe {
    pub verdict: GapVerdict,
    /// Increasing members below `x`.
    pub below: Vec<Element>,
    /// Decreasing members above `x`.
    pub above: Vec<Element>,
}

/// Whether `x` fills a proper gap of `y`, judged by `depth` rounds of witnesses
/// on each side.
pub fn fills_proper_gap<S: SubOrder + ?Sized>(
    x: &Element,
    y: &S,
    depth: usize,
) -> Result<GapVerdict, DualityError> {
    probe_gap(x, y, depth).map(|p| p.verdict)
}

/// [`fills_proper_gap`], keeping the witness chains.
///
/// Each side is seeded with one member, then improved `depth` times, so a
/// chain that runs the full depth has `depth + 1` elements. Both seeds are
/// requested before any improvement, so an empty side is reported as
/// `NoLeft`/`NoRight` ahead of `MaxBelow`/`MinAbove`.
///
/// Every witness is checked: it must be a member, lie strictly on its side of
/// `x`, and strictly improve on the previous one. A witness that fails any of
/// these is reported as [`DualityError::WitnessInvalid`].
pub fn probe_gap<S: SubOrder + ?Sized>(
    x: &Element,
    y: &S,
    depth: usize,
) -> Result<GapProbe, DualityError> {
    let e = y.ambient();
    if !e.inhabits(x) {
        return Err(OrderError::ForeignElement.into());
    }
    let mut probe = GapProbe {
        verdict: GapVerdict::FillsToDepth(depth),
        below: Vec::new(),
        above: Vec::new(),
    };
    if y.contains(x) {
        probe.verdict = GapVerdict::NotGap(NotGapReason::Member);
        return Ok(probe);
    }
    let witness = |want: Ordering, current: Option<&Element>| -> Result<Option<Element>, DualityError> {
        let next = if want == Ordering::Less {
            y.left_witness(x, current)
        } else {
            y.right_witness(x, current)
        };
        if let Some(next) = &next {
            check_witness(e, y, x, current, next, want)?;
        }
        Ok(next)
    };
    let Some(seed) = witness(Ordering::Less, None)? else {
        probe.verdict = GapVerdict::NotGap(NotGapReason::NoLeft);
        return Ok(probe);
    };
    probe.below.push(seed);
    let Some(seed) = witness(Ordering::Greater, None)? else {
        probe.verdict = GapVerdict::NotGap(NotGapReason::NoRight);
        return Ok(probe);
    };
    probe.above.push(seed);
    let sides = [
        (Ordering::Less, NotGapReason::MaxBelow),
        (Ordering::Greater, NotGapReason::MinAbove),
    ];
    for (want, extremal) in sides {
        let chain = if want == Ordering::Less {
            &mut probe.below
        } else {
            &mut probe.above
        };
        for _ in 0..depth {
            match witness(want, chain.last())? {
                Some(next) => chain.push(next),
                None => {
                    probe.verdict = GapVerdict::NotGap(extremal);
                    return Ok(probe);
                }
            }
        }
    }
    Ok(probe)
}

fn check_witness<S: SubOrder + ?Sized>(
    e: &OrderExpr,
    y: &S,
    x: &Element,
    previous: Option<&Element>,
    next: &Element,
    want: Ordering,
) -> Result<(), DualityError> {
    let invalid = |what: &str| Err(DualityError::WitnessInvalid(what.to_string()));
    if !e.inhabits(next) || !y.contains(next) {
        return invalid("witness is not a member of the suborder");
    }
    if order::compare(e, next, x)? != want {
        return invalid("witness lies on the wrong side of the point");
    }
    if let Some(prev) = previous {
        if order::compare(e, prev, next)? != want {
            return invalid("witness does not move toward the point");
        }
    }
    Ok(())
}

/// A finite suborder, listed explicitly. Never has a proper gap.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinitePresentation {
    ambient: OrderExpr,
    members: Vec<Element>,
}

impl FinitePresentation {
    pub fn new(ambient: OrderExpr, members: Vec<Element>) -> Result<Self, DualityError> {
        if members.iter().any(|m| !ambient.inhabits(m)) {
            return Err(OrderError::ForeignElement.into());
        }
        let mut members = members;
        members.sort_by(|a, b| order::compare_unchecked(&ambient, a, b));
        members.dedup();
        Ok(FinitePresentation { ambient, members })
    }

    /// Members in increasing order.
    pub fn members(&self) -> &[Element] {
        &self.members
    }

    fn cmp(&self, a: &Element, b: &Element) -> Ordering {
        order::compare_unchecked(&self.ambient, a, b)
    }
}

impl SubOrder for FinitePresentation {
    fn ambient(&self) -> &OrderExpr {
        &self.ambient
    }

    fn contains(&self, x: &Element) -> bool {
        self.ambient.inhabits(x) && self.members.contains(x)
    }

    fn sample(&self, n: usize) -> Vec<Element> {
        self.members.iter().take(n).cloned().collect()
    }

    // the greatest member below x, and nothing strictly above it
    fn left_witness(&self, x: &Element, current: Option<&Element>) -> Option<Element> {
        self.members
            .iter()
            .rev()
            .find(|m| self.cmp(m, x).is_lt())
            .filter(|m| current.is_none_or(|c| self.cmp(c, m).is_lt()))
            .cloned()
    }

    fn right_witness(&self, x: &Element, current: Option<&Element>) -> Option<Element> {
        self.members
            .iter()
            .find(|m| self.cmp(m, x).is_gt())
            .filter(|m| current.is_none_or(|c| self.cmp(c, m).is_gt()))
            .cloned()
    }
}

/// An increasing family of suborders `(Y_α)_{α < length}` of one ambient order.
pub trait Filtration {
    type Level: SubOrder;
    fn ambient(&self) -> &OrderExpr;
    fn length(&self) -> OrdCode;
    fn level(&self, index: OrdCode) -> Self::Level;
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FiltrationViolation {
    /// `element` is in level `lower` but not in the later level `upper`.
    NotIncreasing {
        lower: OrdCode,
        upper: OrdCode,
        element: Element,
    },
    /// Membership at a limit level disagrees with the union of earlier levels.
    Discontinuous { limit: OrdCode, element: Element },
    /// No level examined contains `element`.
    NotExhaustive { element: Element },
}

/// Spot-checks that a filtration is increasing, continuous at limits and
/// exhaustive, on the given sample points and level indices.
///
/// Continuity and exhaustion are existential, so they are searched only among
/// the first `search` fundamental-sequence terms and the first `search` level
/// indices respectively.
pub fn check_filtration<F: Filtration>(
    f: &F,
    samples: &[Element],
    indices: &[OrdCode],
    search: usize,
) -> Result<(), FiltrationViolation> {
    let levels: Vec<(OrdCode, F::Level)> = indices.iter().map(|&i| (i, f.level(i))).collect();
    for (lo, lower) in &levels {
        for (hi, upper) in &levels {
            if lo >= hi {
                continue;
            }
            if let Some(x) = samples.iter().find(|x| lower.contains(x) && !upper.contains(x)) {
                return Err(FiltrationViolation::NotIncreasing {
                    lower: *lo,
                    upper: *hi,
                    element: x.clone(),
                });
            }
        }
    }
    for (limit, level) in levels.iter().filter(|(i, _)| i.is_limit()) {
        let earlier: Vec<F::Level> = (0..search as u64)
            .map(|n| f.level(limit.fundamental(n).expect("limit")))
            .collect();
        for x in samples {
            let in_union = earlier.iter().any(|l| l.contains(x));
            if in_union != level.contains(x) {
                return Err(FiltrationViolation::Discontinuous {
                    limit: *limit,
                    element: x.clone(),
                });
            }
        }
    }
    let all: Vec<F::Level> = f.length().below().take(search).map(|i| f.level(i)).collect();
    if let Some(x) = samples.iter().find(|x| !all.iter().any(|l| l.contains(x))) {
        return Err(FiltrationViolation::NotExhaustive { element: x.clone() });
    }
    Ok(())
}

/// The candidates that fill a proper gap of `level` to the given depth.
pub fn gap_fillers<S: SubOrder + ?Sized>(
    level: &S,
    candidates: &[Element],
    depth: usize,
) -> Result<Vec<Element>, DualityError> {
    let mut found = Vec::new();
    for x in candidates {
        if let GapVerdict::FillsToDepth(_) = fills_proper_gap(x, level, depth)? {
            found.push(x.clone());
        }
    }
    Ok(found)
}
