//! Effectively presented linear orders.
//!
//! An [`OrderExpr`] is built from a few base orders (finite chains, ω, ℚ, and
//! lexicographic spaces of finite-support vectors) by reversal, ordered sums and
//! point duplication. Every query on it (comparison, neighbours, a point
//! strictly between two others, one-sided character) is decided by structural
//! recursion and always terminates.

mod enumerate;
mod finite;

use std::cmp::Ordering;
use std::collections::BTreeSet;

use thiserror::Error;

use crate::kurepa::{self, KurepaPoint};
use crate::ordinal::OrdCode;
use crate::rational::{self, Rational};

pub use enumerate::{elements, enumerate, size};
pub use finite::FiniteOrder;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrderError {
    #[error("element does not belong to this order")]
    ForeignElement,
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("expression is not a duplication")]
    NotADuplication,
    #[error("requested {requested} elements but the order has only {available}")]
    Exhausted { requested: usize, available: usize },
    #[error("ill-formed order expression: {0}")]
    InvalidExpr(String),
    #[error("label at position {0} repeats an earlier label")]
    DuplicateLabel(usize),
}

/// A linear order given by its construction.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum OrderExpr {
    /// The chain `0 < 1 < … < n−1`.
    Fin(u64),
    Omega,
    Rationals,
    Rev(Box<OrderExpr>),
    /// Every element of `lower` precedes every element of `upper`.
    Sum(Box<OrderExpr>, Box<OrderExpr>),
    /// Finite-support rational vectors on the ordinals below `kappa`, ordered
    /// lexicographically.
    LexQ(OrdCode),
    /// `LexQ(kappa)` together with the gap fillers `y_δ` for `δ ∈ fillers`.
    KurepaX {
        kappa: OrdCode,
        fillers: BTreeSet<OrdCode>,
    },
    /// `inner` with each listed point replaced by an adjacent pair `p⁻ < p⁺`.
    /// The list is sorted and free of repeats.
    Dup {
        inner: Box<OrderExpr>,
        points: Vec<Element>,
    },
}

/// Which copy of a duplicated point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Half {
    Minus,
    Plus,
}

/// A value of some [`OrderExpr`]; its shape mirrors the expression.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Element {
    Index(u64),
    Nat(u64),
    Rat(Rational),
    Rev(Box<Element>),
    Lower(Box<Element>),
    Upper(Box<Element>),
    Point(KurepaPoint),
    Dup(Box<Element>, Option<Half>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn flip(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CharClass {
    Isolated,
    CountableLimit,
    /// Assigned only through a [`CharOverrides`] table.
    UncountableSurrogate,
}

impl OrderExpr {
    pub fn rev(inner: OrderExpr) -> Self {
        OrderExpr::Rev(Box::new(inner))
    }

    pub fn sum(lower: OrderExpr, upper: OrderExpr) -> Self {
        OrderExpr::Sum(Box::new(lower), Box::new(upper))
    }

    pub fn kurepa<I>(kappa: OrdCode, fillers: I) -> Result<Self, OrderError>
    where
        I: IntoIterator<Item = OrdCode>,
    {
        let e = OrderExpr::KurepaX {
            kappa,
            fillers: fillers.into_iter().collect(),
        };
        e.validate()?;
        Ok(e)
    }

    /// Checks the construction invariants throughout the expression.
    pub fn validate(&self) -> Result<(), OrderError> {
        match self {
            OrderExpr::Fin(_) | OrderExpr::Omega | OrderExpr::Rationals | OrderExpr::LexQ(_) => {
                Ok(())
            }
            OrderExpr::Rev(inner) => inner.validate(),
            OrderExpr::Sum(l, u) => {
                l.validate()?;
                u.validate()
            }
            OrderExpr::KurepaX { kappa, fillers } => {
                match fillers.iter().find(|d| !d.is_limit() || *d >= kappa) {
                    Some(d) => Err(OrderError::InvalidExpr(format!(
                        "filler index {d} must be a limit below {kappa}"
                    ))),
                    None => Ok(()),
                }
            }
            OrderExpr::Dup { inner, points } => {
                inner.validate()?;
                if points.iter().any(|p| !inner.inhabits(p)) {
                    return Err(OrderError::InvalidExpr(
                        "duplicated point is not an element of the inner order".into(),
                    ));
                }
                let sorted = points
                    .windows(2)
                    .all(|w| compare_unchecked(inner, &w[0], &w[1]) == Ordering::Less);
                if sorted {
                    Ok(())
                } else {
                    Err(OrderError::InvalidExpr(
                        "duplicated points must be listed once, in increasing order".into(),
                    ))
                }
            }
        }
    }

    /// Whether `a` is an element of this order.
    pub fn inhabits(&self, a: &Element) -> bool {
        match (self, a) {
            (OrderExpr::Fin(n), Element::Index(i)) => i < n,
            (OrderExpr::Omega, Element::Nat(_)) => true,
            (OrderExpr::Rationals, Element::Rat(_)) => true,
            (OrderExpr::Rev(inner), Element::Rev(x)) => inner.inhabits(x),
            (OrderExpr::Sum(l, _), Element::Lower(x)) => l.inhabits(x),
            (OrderExpr::Sum(_, u), Element::Upper(x)) => u.inhabits(x),
            (OrderExpr::LexQ(kappa), Element::Point(KurepaPoint::Vec(v))) => {
                v.max_coord().is_none_or(|m| m < *kappa)
            }
            (OrderExpr::KurepaX { kappa, fillers }, Element::Point(p)) => match p {
                KurepaPoint::Vec(v) => v.max_coord().is_none_or(|m| m < *kappa),
                KurepaPoint::Y(delta) => fillers.contains(delta),
            },
            (OrderExpr::Dup { inner, points }, Element::Dup(x, half)) => {
                inner.inhabits(x) && points.contains(x) == half.is_some()
            }
            _ => false,
        }
    }

    pub fn is_empty(&self) -> bool {
        match self {
            OrderExpr::Fin(n) => *n == 0,
            OrderExpr::Rev(inner) | OrderExpr::Dup { inner, .. } => inner.is_empty(),
            OrderExpr::Sum(l, u) => l.is_empty() && u.is_empty(),
            _ => false,
        }
    }
}

fn check(e: &OrderExpr, elems: &[&Element]) -> Result<(), OrderError> {
    if elems.iter().all(|a| e.inhabits(a)) {
        Ok(())
    } else {
        Err(OrderError::ForeignElement)
    }
}

fn boxed(a: Element, wrap: fn(Box<Element>) -> Element) -> Element {
    wrap(Box::new(a))
}

fn dup_wrap(points: &[Element], x: Element, half_if_split: Half) -> Element {
    let half = points.contains(&x).then_some(half_if_split);
    Element::Dup(Box::new(x), half)
}

/// Total order comparison of two elements of `e`.
pub fn compare(e: &OrderExpr, a: &Element, b: &Element) -> Result<Ordering, OrderError> {
    check(e, &[a, b])?;
    Ok(compare_unchecked(e, a, b))
}

pub(crate) fn compare_unchecked(e: &OrderExpr, a: &Element, b: &Element) -> Ordering {
    match (e, a, b) {
        (OrderExpr::Fin(_), Element::Index(i), Element::Index(j)) => i.cmp(j),
        (OrderExpr::Omega, Element::Nat(i), Element::Nat(j)) => i.cmp(j),
        (OrderExpr::Rationals, Element::Rat(p), Element::Rat(q)) => p.cmp(q),
        (OrderExpr::Rev(inner), Element::Rev(x), Element::Rev(y)) => {
            compare_unchecked(inner, x, y).reverse()
        }
        (OrderExpr::Sum(l, _), Element::Lower(x), Element::Lower(y)) => compare_unchecked(l, x, y),
        (OrderExpr::Sum(_, u), Element::Upper(x), Element::Upper(y)) => compare_unchecked(u, x, y),
        (OrderExpr::Sum(..), Element::Lower(_), Element::Upper(_)) => Ordering::Less,
        (OrderExpr::Sum(..), Element::Upper(_), Element::Lower(_)) => Ordering::Greater,
        (OrderExpr::LexQ(_) | OrderExpr::KurepaX { .. }, Element::Point(p), Element::Point(q)) => {
            kurepa::lex_compare(p, q)
        }
        (OrderExpr::Dup { inner, .. }, Element::Dup(x, hx), Element::Dup(y, hy)) => {
            compare_unchecked(inner, x, y).then(hx.cmp(hy))
        }
        _ => unreachable!("elements were checked against the expression"),
    }
}

/// The least (`Left`) or greatest (`Right`) element, if there is one.
pub fn extreme(e: &OrderExpr, side: Side) -> Option<Element> {
    match e {
        OrderExpr::Fin(0) => None,
        OrderExpr::Fin(n) => Some(Element::Index(match side {
            Side::Left => 0,
            Side::Right => n - 1,
        })),
        OrderExpr::Omega => (side == Side::Left).then_some(Element::Nat(0)),
        OrderExpr::Rationals => None,
        OrderExpr::Rev(inner) => extreme(inner, side.flip()).map(|x| boxed(x, Element::Rev)),
        OrderExpr::Sum(l, u) => {
            let (lower_empty, upper_empty) = (l.is_empty(), u.is_empty());
            match side {
                Side::Left if !lower_empty => extreme(l, side).map(|x| boxed(x, Element::Lower)),
                Side::Left => extreme(u, side).map(|x| boxed(x, Element::Upper)),
                Side::Right if !upper_empty => extreme(u, side).map(|x| boxed(x, Element::Upper)),
                Side::Right => extreme(l, side).map(|x| boxed(x, Element::Lower)),
            }
        }
        OrderExpr::LexQ(kappa) | OrderExpr::KurepaX { kappa, .. } => {
            // ℚ^0 is a single point; otherwise the first coordinate is unbounded
            kappa
                .is_zero()
                .then(|| Element::Point(KurepaPoint::zero()))
        }
        OrderExpr::Dup { inner, points } => {
            let half = match side {
                Side::Left => Half::Minus,
                Side::Right => Half::Plus,
            };
            extreme(inner, side).map(|x| dup_wrap(points, x, half))
        }
    }
}

/// Some element strictly on `side` of `a`, if any exists.
pub fn beyond(e: &OrderExpr, a: &Element, side: Side) -> Result<Option<Element>, OrderError> {
    check(e, &[a])?;
    Ok(beyond_unchecked(e, a, side))
}

fn beyond_unchecked(e: &OrderExpr, a: &Element, side: Side) -> Option<Element> {
    match (e, a) {
        (OrderExpr::Fin(_) | OrderExpr::Omega, _) => neighbor_unchecked(e, a, side),
        (OrderExpr::Rationals, Element::Rat(q)) => Some(Element::Rat(match side {
            Side::Left => q - rational::int(1),
            Side::Right => q + rational::int(1),
        })),
        (OrderExpr::Rev(inner), Element::Rev(x)) => {
            beyond_unchecked(inner, x, side.flip()).map(|y| boxed(y, Element::Rev))
        }
        (OrderExpr::Sum(l, u), Element::Lower(x)) => beyond_unchecked(l, x, side)
            .map(|y| boxed(y, Element::Lower))
            .or_else(|| match side {
                Side::Right => enumerate::first(u).map(|y| boxed(y, Element::Upper)),
                Side::Left => None,
            }),
        (OrderExpr::Sum(l, u), Element::Upper(x)) => beyond_unchecked(u, x, side)
            .map(|y| boxed(y, Element::Upper))
            .or_else(|| match side {
                Side::Left => enumerate::first(l).map(|y| boxed(y, Element::Lower)),
                Side::Right => None,
            }),
        (OrderExpr::LexQ(kappa) | OrderExpr::KurepaX { kappa, .. }, Element::Point(p)) => {
            if kappa.is_zero() {
                return None;
            }
            let step = match side {
                Side::Left => rational::int(-1),
                Side::Right => rational::int(1),
            };
            let v = KurepaPoint::vector([(OrdCode::ZERO, p.coord_at(OrdCode::ZERO) + step)]);
            Some(Element::Point(v))
        }
        (OrderExpr::Dup { inner, points }, Element::Dup(x, half)) => match (half, side) {
            (Some(Half::Minus), Side::Right) => Some(Element::Dup(x.clone(), Some(Half::Plus))),
            (Some(Half::Plus), Side::Left) => Some(Element::Dup(x.clone(), Some(Half::Minus))),
            _ => beyond_unchecked(inner, x, side).map(|y| dup_wrap(points, y, Half::Minus)),
        },
        _ => unreachable!("element was checked against the expression"),
    }
}

/// The immediate neighbour of `a` on `side`: the successor for `Right`, the
/// predecessor for `Left`.
pub fn neighbor(e: &OrderExpr, a: &Element, side: Side) -> Result<Option<Element>, OrderError> {
    check(e, &[a])?;
    Ok(neighbor_unchecked(e, a, side))
}

pub fn successor(e: &OrderExpr, a: &Element) -> Result<Option<Element>, OrderError> {
    neighbor(e, a, Side::Right)
}

pub fn predecessor(e: &OrderExpr, a: &Element) -> Result<Option<Element>, OrderError> {
    neighbor(e, a, Side::Left)
}

fn neighbor_unchecked(e: &OrderExpr, a: &Element, side: Side) -> Option<Element> {
    match (e, a) {
        (OrderExpr::Fin(n), Element::Index(i)) => match side {
            Side::Left => i.checked_sub(1),
            Side::Right => (i + 1 < *n).then_some(i + 1),
        }
        .map(Element::Index),
        (OrderExpr::Omega, Element::Nat(i)) => match side {
            Side::Left => i.checked_sub(1),
            Side::Right => Some(i + 1),
        }
        .map(Element::Nat),
        (OrderExpr::Rationals, _) => None,
        (OrderExpr::Rev(inner), Element::Rev(x)) => {
            neighbor_unchecked(inner, x, side.flip()).map(|y| boxed(y, Element::Rev))
        }
        (OrderExpr::Sum(l, u), Element::Lower(x)) => match side {
            Side::Left => neighbor_unchecked(l, x, side).map(|y| boxed(y, Element::Lower)),
            Side::Right => match neighbor_unchecked(l, x, side) {
                Some(y) => Some(boxed(y, Element::Lower)),
                None if beyond_unchecked(l, x, side).is_none() => {
                    extreme(u, Side::Left).map(|y| boxed(y, Element::Upper))
                }
                None => None,
            },
        },
        (OrderExpr::Sum(l, u), Element::Upper(x)) => match side {
            Side::Right => neighbor_unchecked(u, x, side).map(|y| boxed(y, Element::Upper)),
            Side::Left => match neighbor_unchecked(u, x, side) {
                Some(y) => Some(boxed(y, Element::Upper)),
                None if beyond_unchecked(u, x, side).is_none() => {
                    extreme(l, Side::Right).map(|y| boxed(y, Element::Lower))
                }
                None => None,
            },
        },
        // dense, or a single point when kappa = 0
        (OrderExpr::LexQ(_) | OrderExpr::KurepaX { .. }, _) => None,
        (OrderExpr::Dup { inner, points }, Element::Dup(x, half)) => match (half, side) {
            (Some(Half::Minus), Side::Right) => Some(Element::Dup(x.clone(), Some(Half::Plus))),
            (Some(Half::Plus), Side::Left) => Some(Element::Dup(x.clone(), Some(Half::Minus))),
            _ => {
                let facing = match side {
                    Side::Right => Half::Minus,
                    Side::Left => Half::Plus,
                };
                neighbor_unchecked(inner, x, side).map(|y| dup_wrap(points, y, facing))
            }
        },
        _ => unreachable!("element was checked against the expression"),
    }
}

/// Some element strictly between `a < b`, or `None` when they are adjacent.
pub fn between(e: &OrderExpr, a: &Element, b: &Element) -> Result<Option<Element>, OrderError> {
    check(e, &[a, b])?;
    if compare_unchecked(e, a, b) != Ordering::Less {
        return Err(OrderError::PreconditionViolated(
            "between needs a strictly smaller first argument".into(),
        ));
    }
    Ok(between_unchecked(e, a, b))
}

fn between_unchecked(e: &OrderExpr, a: &Element, b: &Element) -> Option<Element> {
    match (e, a, b) {
        (OrderExpr::Fin(_), Element::Index(i), Element::Index(j)) => {
            (i + 1 < *j).then(|| Element::Index(i + 1))
        }
        (OrderExpr::Omega, Element::Nat(i), Element::Nat(j)) => {
            (i + 1 < *j).then(|| Element::Nat(i + 1))
        }
        (OrderExpr::Rationals, Element::Rat(p), Element::Rat(q)) => {
            Some(Element::Rat(rational::midpoint(p, q)))
        }
        (OrderExpr::Rev(inner), Element::Rev(x), Element::Rev(y)) => {
            between_unchecked(inner, y, x).map(|z| boxed(z, Element::Rev))
        }
        (OrderExpr::Sum(l, _), Element::Lower(x), Element::Lower(y)) => {
            between_unchecked(l, x, y).map(|z| boxed(z, Element::Lower))
        }
        (OrderExpr::Sum(_, u), Element::Upper(x), Element::Upper(y)) => {
            between_unchecked(u, x, y).map(|z| boxed(z, Element::Upper))
        }
        (OrderExpr::Sum(l, u), Element::Lower(x), Element::Upper(y)) => {
            beyond_unchecked(l, x, Side::Right)
                .map(|z| boxed(z, Element::Lower))
                .or_else(|| beyond_unchecked(u, y, Side::Left).map(|z| boxed(z, Element::Upper)))
        }
        (OrderExpr::LexQ(_) | OrderExpr::KurepaX { .. }, Element::Point(p), Element::Point(q)) => {
            kurepa::lex_between(p, q).map(|v| Element::Point(KurepaPoint::Vec(v)))
        }
        (OrderExpr::Dup { inner, points }, Element::Dup(x, hx), Element::Dup(y, hy)) => {
            if x == y {
                // p⁻ < p⁺ are adjacent
                return None;
            }
            if *hx == Some(Half::Minus) {
                return Some(Element::Dup(x.clone(), Some(Half::Plus)));
            }
            if *hy == Some(Half::Plus) {
                return Some(Element::Dup(y.clone(), Some(Half::Minus)));
            }
            between_unchecked(inner, x, y).map(|z| dup_wrap(points, z, Half::Minus))
        }
        _ => unreachable!("elements were checked against the expression"),
    }
}

/// Finitely many points declared to have uncountable character on one side.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CharOverrides {
    entries: Vec<(Element, Side)>,
}

impl CharOverrides {
    pub fn new(e: &OrderExpr, entries: Vec<(Element, Side)>) -> Result<Self, OrderError> {
        check(e, &entries.iter().map(|(a, _)| a).collect::<Vec<_>>())?;
        Ok(CharOverrides { entries })
    }

    pub fn entries(&self) -> &[(Element, Side)] {
        &self.entries
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// One-sided character: `Isolated` when `a` has an immediate neighbour on
/// `side` or nothing lies beyond it there, `CountableLimit` otherwise.
pub fn character(e: &OrderExpr, a: &Element, side: Side) -> Result<CharClass, OrderError> {
    character_with(e, a, side, &CharOverrides::default())
}

pub fn character_with(
    e: &OrderExpr,
    a: &Element,
    side: Side,
    overrides: &CharOverrides,
) -> Result<CharClass, OrderError> {
    check(e, &[a])?;
    let structural = if neighbor_unchecked(e, a, side).is_some()
        || beyond_unchecked(e, a, side).is_none()
    {
        CharClass::Isolated
    } else {
        CharClass::CountableLimit
    };
    if overrides.entries.iter().any(|(x, s)| x == a && *s == side) {
        Ok(CharClass::UncountableSurrogate)
    } else {
        Ok(structural)
    }
}

/// Replaces each listed point `p` by an adjacent pair `p⁻ < p⁺`.
pub fn duplicate<I>(e: &OrderExpr, points: I) -> Result<OrderExpr, OrderError>
where
    I: IntoIterator<Item = Element>,
{
    let mut points: Vec<Element> = points.into_iter().collect();
    check(e, &points.iter().collect::<Vec<_>>())?;
    points.sort_by(|a, b| compare_unchecked(e, a, b));
    points.dedup();
    Ok(OrderExpr::Dup {
        inner: Box::new(e.clone()),
        points,
    })
}

/// The quotient of a duplication identifying each pair `p⁻, p⁺` with `p`.
pub fn collate(e: &OrderExpr) -> Result<OrderExpr, OrderError> {
    match e {
        OrderExpr::Dup { inner, .. } => Ok((**inner).clone()),
        _ => Err(OrderError::NotADuplication),
    }
}

/// The quotient map of [`collate`] on elements.
pub fn collate_element(e: &OrderExpr, a: &Element) -> Result<Element, OrderError> {
    match (e, a) {
        (OrderExpr::Dup { .. }, Element::Dup(x, _)) if e.inhabits(a) => Ok((**x).clone()),
        (OrderExpr::Dup { .. }, _) => Err(OrderError::ForeignElement),
        _ => Err(OrderError::NotADuplication),
    }
}

/// The explicit chain when `e` is finite.
pub fn materialize(e: &OrderExpr) -> Option<FiniteOrder<Element>> {
    size(e)?;
    let mut all: Vec<Element> = elements(e).collect();
    all.sort_by(|a, b| compare_unchecked(e, a, b));
    Some(FiniteOrder::from_distinct(all))
}
