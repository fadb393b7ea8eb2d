use std::collections::BTreeSet;

use super::{
    gap_witness_left, gap_witness_right, in_filtration, level_bound, lex_between, lex_compare,
    truncate_projection, FinSuppVec, KurepaError, KurepaPoint, SignedPoint,
};
use crate::duality::{Filtration, SubOrder};
use crate::order::{elements, Element, OrderExpr};
use crate::ordinal::OrdCode;
use crate::rational::int;

/// The level `X_δ` of `X = KurepaX(κ, S)`, as a suborder with gap witnesses.
///
/// For `y_δ` (when `δ ∈ S`) the witnesses come from [`gap_witness_left`] and
/// [`gap_witness_right`], so both chains run forever. For any other point
/// outside the level, its truncation is the greatest member below it or the
/// least member above it, and the chain on that side stops there.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiltrationLevel {
    ambient: OrderExpr,
    fillers: BTreeSet<OrdCode>,
    delta: OrdCode,
}

/// `X_δ` inside `KurepaX(κ, S)`.
pub fn build_filtration_presentation(
    kappa: OrdCode,
    fillers: &BTreeSet<OrdCode>,
    delta: OrdCode,
) -> Result<FiltrationLevel, KurepaError> {
    if delta > kappa {
        return Err(KurepaError::PreconditionViolated(format!(
            "level {delta} exceeds the length {kappa}"
        )));
    }
    let ambient = OrderExpr::kurepa(kappa, fillers.iter().copied())
        .map_err(|e| KurepaError::PreconditionViolated(e.to_string()))?;
    Ok(FiltrationLevel {
        ambient,
        fillers: fillers.clone(),
        delta,
    })
}

impl FiltrationLevel {
    pub fn delta(&self) -> OrdCode {
        self.delta
    }

    fn point<'a>(&self, x: &'a Element) -> Option<&'a KurepaPoint> {
        match x {
            Element::Point(p) if self.ambient.inhabits(x) => Some(p),
            _ => None,
        }
    }

    fn is_member(&self, p: &KurepaPoint) -> bool {
        in_filtration(p, self.delta)
    }

    /// Truncation of a non-member, or `None` where the level offers nothing.
    fn truncation(&self, p: &KurepaPoint) -> Option<SignedPoint> {
        truncate_projection(p, self.delta).ok()
    }

    fn is_own_filler(&self, p: &KurepaPoint) -> bool {
        *p == KurepaPoint::Y(self.delta)
    }

    /// `t` moved by `step` at coordinate 0, which every level from 2 on admits.
    fn nudge(t: &KurepaPoint, step: i64) -> KurepaPoint {
        let mut v = t.as_vec().cloned().expect("truncations of non-members are vectors");
        v.set(OrdCode::ZERO, t.coord_at(OrdCode::ZERO) + int(step));
        KurepaPoint::Vec(v)
    }
}

fn wrap(p: KurepaPoint) -> Element {
    Element::Point(p)
}

impl SubOrder for FiltrationLevel {
    fn ambient(&self) -> &OrderExpr {
        &self.ambient
    }

    fn contains(&self, x: &Element) -> bool {
        self.point(x).is_some_and(|p| self.is_member(p))
    }

    fn sample(&self, n: usize) -> Vec<Element> {
        if self.delta.is_zero() {
            return Vec::new();
        }
        let fillers = self
            .fillers
            .iter()
            .filter(|l| **l < self.delta)
            .map(|l| KurepaPoint::Y(*l));
        let lex = OrderExpr::LexQ(level_bound(self.delta));
        let vectors = elements(&lex).filter_map(|x| match x {
            Element::Point(p) => Some(p),
            _ => None,
        });
        fillers.chain(vectors).take(n).map(wrap).collect()
    }

    fn left_witness(&self, x: &Element, current: Option<&Element>) -> Option<Element> {
        let p = self.point(x)?;
        if self.is_member(p) {
            return None;
        }
        let current = match current {
            Some(c) => Some(self.point(c)?),
            None => None,
        };
        if self.is_own_filler(p) {
            return match current {
                None => Some(wrap(KurepaPoint::zero())),
                Some(a) => gap_witness_left(self.delta, a).ok().map(wrap),
            };
        }
        match self.truncation(p)? {
            SignedPoint::NegInf => None,
            SignedPoint::PosInf => current.is_none().then(|| wrap(KurepaPoint::zero())),
            SignedPoint::Point(t) if lex_compare(&t, p).is_lt() => {
                // t is the greatest member below p
                current.is_none().then(|| wrap(t))
            }
            SignedPoint::Point(t) => match current {
                None => Some(wrap(Self::nudge(&t, -1))),
                Some(a) => lex_between(a, &t).map(|m| wrap(KurepaPoint::Vec(m))),
            },
        }
    }

    fn right_witness(&self, x: &Element, current: Option<&Element>) -> Option<Element> {
        let p = self.point(x)?;
        if self.is_member(p) {
            return None;
        }
        let current = match current {
            Some(c) => Some(self.point(c)?),
            None => None,
        };
        if self.is_own_filler(p) {
            return match current {
                None => {
                    let first = self.delta.fundamental(0).expect("filler index is a limit");
                    Some(wrap(KurepaPoint::Vec(FinSuppVec::from_pairs([(first, int(2))]))))
                }
                Some(b) => gap_witness_right(self.delta, b).ok().map(wrap),
            };
        }
        match self.truncation(p)? {
            SignedPoint::PosInf => None,
            SignedPoint::NegInf => current.is_none().then(|| wrap(KurepaPoint::zero())),
            SignedPoint::Point(t) if lex_compare(&t, p).is_gt() => {
                // t is the least member above p
                current.is_none().then(|| wrap(t))
            }
            SignedPoint::Point(t) => match current {
                None => Some(wrap(Self::nudge(&t, 1))),
                Some(b) => lex_between(&t, b).map(|m| wrap(KurepaPoint::Vec(m))),
            },
        }
    }
}

/// The filtration `(X_δ)_{δ ≤ κ}` of `KurepaX(κ, S)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KurepaFiltration {
    kappa: OrdCode,
    fillers: BTreeSet<OrdCode>,
    ambient: OrderExpr,
}

impl KurepaFiltration {
    pub fn new(kappa: OrdCode, fillers: BTreeSet<OrdCode>) -> Result<Self, KurepaError> {
        let ambient = OrderExpr::kurepa(kappa, fillers.iter().copied())
            .map_err(|e| KurepaError::PreconditionViolated(e.to_string()))?;
        Ok(KurepaFiltration {
            kappa,
            fillers,
            ambient,
        })
    }
}

impl Filtration for KurepaFiltration {
    type Level = FiltrationLevel;

    fn ambient(&self) -> &OrderExpr {
        &self.ambient
    }

    fn length(&self) -> OrdCode {
        self.kappa
    }

    fn level(&self, index: OrdCode) -> FiltrationLevel {
        FiltrationLevel {
            ambient: self.ambient.clone(),
            fillers: self.fillers.clone(),
            delta: index,
        }
    }
}
