//! Deterministic enumeration of the elements of an order.
//!
//! Orders per variant:
//! - `Fin(n)`, `Omega`: increasing.
//! - `Rationals`: `0`, then `1, -1, 1/2, -1/2, 2, -2, …` (Calkin–Wilf, signed).
//! - `Rev(e)`: the order of `e`.
//! - `Sum(l, u)`: alternately from `l` and `u`, continuing with the survivor
//!   once one side is exhausted.
//! - `LexQ(κ)`: by rank, where a vector using coordinates among the first `i`
//!   ordinals below `κ` and values among the first `j` nonzero rationals has rank
//!   at most `max(i, j)`; within a rank, by mixed-radix code.
//! - `KurepaX(κ, S)`: the fillers `y_δ` in increasing `δ`, then as `LexQ(κ)`.
//! - `Dup(e, P)`: the order of `e`, each split point yielding `p⁻` then `p⁺`.

use super::{Element, Half, OrderError, OrderExpr};
use crate::kurepa::{FinSuppVec, KurepaPoint};
use crate::ordinal::OrdCode;
use crate::rational::{self, Rational};

/// Number of elements, `None` when infinite.
pub fn size(e: &OrderExpr) -> Option<u64> {
    match e {
        OrderExpr::Fin(n) => Some(*n),
        OrderExpr::Omega | OrderExpr::Rationals => None,
        OrderExpr::Rev(inner) => size(inner),
        OrderExpr::Sum(l, u) => Some(size(l)? + size(u)?),
        OrderExpr::LexQ(kappa) | OrderExpr::KurepaX { kappa, .. } => {
            // fillers sit below kappa, so kappa = 0 leaves only the empty vector
            kappa.is_zero().then_some(1)
        }
        OrderExpr::Dup { inner, points } => Some(size(inner)? + points.len() as u64),
    }
}

/// The first `n` elements in the documented order.
pub fn enumerate(e: &OrderExpr, n: usize) -> Result<Vec<Element>, OrderError> {
    let got: Vec<Element> = elements(e).take(n).collect();
    if got.len() < n {
        return Err(OrderError::Exhausted {
            requested: n,
            available: got.len(),
        });
    }
    Ok(got)
}

pub(super) fn first(e: &OrderExpr) -> Option<Element> {
    elements(e).next()
}

/// Every element of `e`, each exactly once, in the documented order.
pub fn elements(e: &OrderExpr) -> Box<dyn Iterator<Item = Element> + '_> {
    match e {
        OrderExpr::Fin(n) => Box::new((0..*n).map(Element::Index)),
        OrderExpr::Omega => Box::new((0u64..).map(Element::Nat)),
        OrderExpr::Rationals => Box::new(
            std::iter::once(rational::int(0))
                .chain(rational::nonzero_rationals())
                .map(Element::Rat),
        ),
        OrderExpr::Rev(inner) => Box::new(elements(inner).map(|x| Element::Rev(Box::new(x)))),
        OrderExpr::Sum(l, u) => Box::new(Alternate {
            left: elements(l).map(|x| Element::Lower(Box::new(x))).fuse(),
            right: elements(u).map(|x| Element::Upper(Box::new(x))).fuse(),
            left_turn: true,
        }),
        OrderExpr::LexQ(kappa) => Box::new(lex_vectors(*kappa).map(point)),
        OrderExpr::KurepaX { kappa, fillers } => Box::new(
            fillers
                .iter()
                .map(|d| Element::Point(KurepaPoint::Y(*d)))
                .chain(lex_vectors(*kappa).map(point)),
        ),
        OrderExpr::Dup { inner, points } => Box::new(elements(inner).flat_map(move |x| {
            let split = points.contains(&x);
            let copies: Vec<Element> = if split {
                vec![
                    Element::Dup(Box::new(x.clone()), Some(Half::Minus)),
                    Element::Dup(Box::new(x), Some(Half::Plus)),
                ]
            } else {
                vec![Element::Dup(Box::new(x), None)]
            };
            copies.into_iter()
        })),
    }
}

fn point(v: FinSuppVec) -> Element {
    Element::Point(KurepaPoint::Vec(v))
}

struct Alternate<A, B> {
    left: A,
    right: B,
    left_turn: bool,
}

impl<A, B> Iterator for Alternate<A, B>
where
    A: Iterator<Item = Element>,
    B: Iterator<Item = Element>,
{
    type Item = Element;

    fn next(&mut self) -> Option<Element> {
        let turn = self.left_turn;
        self.left_turn = !turn;
        if turn {
            self.left.next().or_else(|| self.right.next())
        } else {
            self.right.next().or_else(|| self.left.next())
        }
    }
}

/// Finite-support vectors over the ordinals below `kappa`, grouped by rank.
fn lex_vectors(kappa: OrdCode) -> impl Iterator<Item = FinSuppVec> {
    // number of coordinates below kappa, when finite
    let available = (kappa.omega_part() == 0).then_some(kappa.finite_part() as usize);
    let max_rank = kappa.is_zero().then_some(0usize);
    (0usize..)
        .take_while(move |r| max_rank.is_none_or(|m| *r <= m))
        .scan((rational::nonzero_rationals(), Vec::new()), |(source, values), rank| {
            values.extend(source.by_ref().take(rank - values.len()));
            Some((rank, values.clone()))
        })
        .flat_map(move |(rank, values)| {
            let width = available.map_or(rank, |a| a.min(rank));
            let coords: Vec<OrdCode> = kappa.below().take(width).collect();
            let radix = rank as u64 + 1;
            let codes = radix.checked_pow(width as u32).expect("enumeration rank too large");
            (0..codes).filter_map(move |code| decode(code, radix, &coords, &values, rank))
        })
}

fn decode(
    mut code: u64,
    radix: u64,
    coords: &[OrdCode],
    values: &[Rational],
    rank: usize,
) -> Option<FinSuppVec> {
    let mut v = FinSuppVec::zero();
    let mut used = 0usize;
    for (i, c) in coords.iter().enumerate() {
        let digit = (code % radix) as usize;
        code /= radix;
        if digit > 0 {
            used = used.max(i.max(digit - 1) + 1);
            v.set(*c, values[digit - 1].clone());
        }
    }
    (used == rank).then_some(v)
}
