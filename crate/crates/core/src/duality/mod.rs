//! Duality between finite linear orders and finite compact lines.
//!
//! `K(X)` is the chain of final segments of `X` ordered by reverse inclusion,
//! from `0_K = X` up to `1_K = ∅`. `X(K)` is the chain of final segments of `K`
//! that omit `0_K` and contain `1_K`, again by reverse inclusion. The two
//! constructions are mutually inverse up to the canonical isomorphisms built by
//! [`embed_in_double_dual`] and [`line_in_double_dual`].
//!
//! An inclusion `Y ⊆ X` dualizes to the increasing surjection
//! `K(X) → K(Y)`, `F ↦ F ∩ Y`. [`right_inverse_with`] builds a right inverse of
//! such a map fiber by fiber, and [`projection_from_right_inverse`] turns any
//! right inverse into an increasing retraction of `conv(Y)` onto `Y`.

mod gap;

use std::ops::RangeInclusive;

use thiserror::Error;

use crate::order::{FiniteOrder, OrderError, Side};

pub use gap::{
    check_filtration, fills_proper_gap, gap_fillers, probe_gap, Filtration, FiltrationViolation,
    FinitePresentation, GapProbe, GapVerdict, NotGapReason, SubOrder,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DualityError {
    #[error("a compact line has at least one point")]
    EmptyOrder,
    #[error("not a suborder of the ambient chain")]
    NotASubset,
    #[error("map decreases right after domain position {0}")]
    NotIncreasing(usize),
    #[error("image of domain position {0} is not a codomain label")]
    NotInCodomain(usize),
    #[error("map has {images} images for a domain of size {domain}")]
    LengthMismatch { domain: usize, images: usize },
    #[error("map misses codomain position {0}")]
    NotSurjective(usize),
    #[error("maps do not compose: inner codomain differs from outer domain")]
    DomainMismatch,
    #[error("fiber [{alpha}, {beta}] has a left-limit minimum and a right-limit maximum")]
    GapObstruction { alpha: usize, beta: usize },
    #[error("map is not a right inverse of the dual inclusion")]
    NotRightInverse,
    #[error("gap witness misbehaved: {0}")]
    WitnessInvalid(String),
    #[error(transparent)]
    Order(#[from] OrderError),
}

/// An order-preserving map between finite chains, stored by positions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IncreasingMap<A, B> {
    domain: FiniteOrder<A>,
    codomain: FiniteOrder<B>,
    images: Vec<usize>,
}

impl<A, B> IncreasingMap<A, B> {
    pub fn new(
        domain: FiniteOrder<A>,
        codomain: FiniteOrder<B>,
        images: Vec<usize>,
    ) -> Result<Self, DualityError> {
        if images.len() != domain.len() {
            return Err(DualityError::LengthMismatch {
                domain: domain.len(),
                images: images.len(),
            });
        }
        if let Some(i) = images.iter().position(|&j| j >= codomain.len()) {
            return Err(DualityError::NotInCodomain(i));
        }
        if let Some(i) = images.windows(2).position(|w| w[0] > w[1]) {
            return Err(DualityError::NotIncreasing(i));
        }
        Ok(IncreasingMap {
            domain,
            codomain,
            images,
        })
    }

    pub fn domain(&self) -> &FiniteOrder<A> {
        &self.domain
    }

    pub fn codomain(&self) -> &FiniteOrder<B> {
        &self.codomain
    }

    /// Codomain position of each domain position.
    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn image_pos(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn is_surjective(&self) -> bool {
        self.missed().is_none()
    }

    fn missed(&self) -> Option<usize> {
        let mut hit = vec![false; self.codomain.len()];
        for &j in &self.images {
            hit[j] = true;
        }
        hit.iter().position(|h| !h)
    }

    pub fn is_bijective(&self) -> bool {
        self.domain.len() == self.codomain.len() && self.images.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// Domain positions mapped to codomain position `j`; an interval because the
    /// map is increasing. Empty when `j` is missed.
    pub fn fiber(&self, j: usize) -> Option<RangeInclusive<usize>> {
        let lo = self.images.iter().position(|&x| x == j)?;
        let hi = self.images.iter().rposition(|&x| x == j)?;
        Some(lo..=hi)
    }
}

impl<A: PartialEq, B: PartialEq> IncreasingMap<A, B> {
    /// The map `a ↦ f(a)` where `f` produces codomain labels.
    pub fn from_fn<F>(
        domain: FiniteOrder<A>,
        codomain: FiniteOrder<B>,
        f: F,
    ) -> Result<Self, DualityError>
    where
        F: Fn(&A) -> B,
    {
        let images = domain
            .iter()
            .enumerate()
            .map(|(i, a)| codomain.position(&f(a)).ok_or(DualityError::NotInCodomain(i)))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(domain, codomain, images)
    }

    pub fn apply(&self, a: &A) -> Option<&B> {
        let i = self.domain.position(a)?;
        self.codomain.get(self.images[i])
    }

    /// `self ∘ inner`.
    pub fn compose<C: Clone>(&self, inner: &IncreasingMap<C, A>) -> Result<IncreasingMap<C, B>, DualityError>
    where
        B: Clone,
    {
        if inner.codomain.labels() != self.domain.labels() {
            return Err(DualityError::DomainMismatch);
        }
        let images = inner.images.iter().map(|&j| self.images[j]).collect();
        IncreasingMap::new(inner.domain.clone(), self.codomain.clone(), images)
    }
}

impl<A: PartialEq> IncreasingMap<A, A> {
    /// Whether this is the identity of a chain (same labels, every point fixed).
    pub fn is_identity(&self) -> bool {
        self.domain.labels() == self.codomain.labels() && self.is_bijective()
    }
}

/// The compact line `K(X)` of a finite chain: its final segments by reverse
/// inclusion. Each segment is listed by its members in increasing order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteCompactLine<L> {
    source: FiniteOrder<L>,
    points: FiniteOrder<Vec<L>>,
}

impl<L> FiniteCompactLine<L> {
    pub fn source(&self) -> &FiniteOrder<L> {
        &self.source
    }

    pub fn points(&self) -> &FiniteOrder<Vec<L>> {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// `0_K`, the whole source.
    pub fn zero(&self) -> &Vec<L> {
        self.points.first().expect("a compact line is nonempty")
    }

    /// `1_K`, the empty segment.
    pub fn one(&self) -> &Vec<L> {
        self.points.last().expect("a compact line is nonempty")
    }
}

/// `K(X)`: all `|X| + 1` final segments, from `X` down to `∅`.
pub fn k_finite<L: Clone>(x: &FiniteOrder<L>) -> FiniteCompactLine<L> {
    let labels = x.labels();
    let points = (0..=labels.len()).map(|i| labels[i..].to_vec()).collect();
    FiniteCompactLine {
        source: x.clone(),
        points: FiniteOrder::from_distinct(points),
    }
}

/// `X(K)`: the final segments of `K` that omit its least point and contain its
/// greatest.
pub fn x_finite<M: Clone>(k: &FiniteOrder<M>) -> Result<FiniteOrder<Vec<M>>, DualityError> {
    if k.is_empty() {
        return Err(DualityError::EmptyOrder);
    }
    let labels = k.labels();
    Ok(FiniteOrder::from_distinct(
        (1..labels.len()).map(|i| labels[i..].to_vec()).collect(),
    ))
}

/// The canonical isomorphism `X → X(K(X))`, `x ↦ {F ∈ K(X) : x ∉ F}`.
pub fn embed_in_double_dual<L: Clone + PartialEq>(
    x: &FiniteOrder<L>,
) -> Result<IncreasingMap<L, Vec<Vec<L>>>, DualityError> {
    let k = k_finite(x);
    let xx = x_finite(k.points())?;
    IncreasingMap::from_fn(x.clone(), xx, |a| {
        k.points()
            .iter()
            .filter(|f| !f.contains(a))
            .cloned()
            .collect()
    })
}

/// The canonical isomorphism `K → K(X(K))`, `k ↦ {F ∈ X(K) : k ∉ F}`.
pub fn line_in_double_dual<M: Clone + PartialEq>(
    k: &FiniteOrder<M>,
) -> Result<IncreasingMap<M, Vec<Vec<M>>>, DualityError> {
    let xk = x_finite(k)?;
    let kk = k_finite(&xk);
    IncreasingMap::from_fn(k.clone(), kk.points().clone(), |a| {
        xk.iter().filter(|f| !f.contains(a)).cloned().collect()
    })
}

fn check_suborder<L: PartialEq>(x: &FiniteOrder<L>, y: &FiniteOrder<L>) -> Result<(), DualityError> {
    let mut last = None;
    for label in y.iter() {
        let p = x.position(label).ok_or(DualityError::NotASubset)?;
        if last.is_some_and(|q| q >= p) {
            return Err(DualityError::NotASubset);
        }
        last = Some(p);
    }
    Ok(())
}

/// The dual of the inclusion `Y ⊆ X`: `K(X) → K(Y)`, `F ↦ F ∩ Y`.
pub fn dual_inclusion<L: Clone + PartialEq>(
    x: &FiniteOrder<L>,
    y: &FiniteOrder<L>,
) -> Result<IncreasingMap<Vec<L>, Vec<L>>, DualityError> {
    check_suborder(x, y)?;
    let kx = k_finite(x);
    let ky = k_finite(y);
    IncreasingMap::from_fn(kx.points, ky.points, |f| {
        f.iter().filter(|a| y.contains(a)).cloned().collect()
    })
}

/// Right inverse of an increasing surjection, chosen fiber by fiber.
///
/// For the fiber `[α, β]` over each point: a singleton maps to itself; else
/// `α` if `β` is isolated from the right; else `β` if `α` is isolated from the
/// left. When neither holds the fiber is a [`DualityError::GapObstruction`].
/// `isolated(position, side)` reports one-sided isolation in the domain.
pub fn right_inverse_with<A, B, I>(
    f: &IncreasingMap<A, B>,
    isolated: I,
) -> Result<IncreasingMap<B, A>, DualityError>
where
    A: Clone,
    B: Clone,
    I: Fn(usize, Side) -> bool,
{
    if let Some(j) = f.missed() {
        return Err(DualityError::NotSurjective(j));
    }
    let images = (0..f.codomain.len())
        .map(|j| {
            let fiber = f.fiber(j).expect("surjective");
            let (alpha, beta) = (*fiber.start(), *fiber.end());
            if alpha == beta || isolated(beta, Side::Right) {
                Ok(alpha)
            } else if isolated(alpha, Side::Left) {
                Ok(beta)
            } else {
                Err(DualityError::GapObstruction { alpha, beta })
            }
        })
        .collect::<Result<Vec<_>, _>>()?;
    IncreasingMap::new(f.codomain.clone(), f.domain.clone(), images)
}

/// [`right_inverse_with`] on a finite compact line, where every point is
/// isolated from both sides; each fiber resolves to its minimum.
pub fn right_inverse_from_gaps<A: Clone, B: Clone>(
    f: &IncreasingMap<A, B>,
) -> Result<IncreasingMap<B, A>, DualityError> {
    right_inverse_with(f, |_, _| true)
}

/// The increasing retraction `p : conv(Y) → Y` read off a right inverse `g` of
/// the dual inclusion `f : K(X) → K(Y)`.
///
/// For `y ∈ conv(Y)` put `k = (y, →) ∈ K(X)`; then `{m ∈ K(Y) : g(m) ≥ k}` is a
/// clopen final segment of `K(Y)` omitting `0` and containing `1`, i.e. a point
/// of `X(K(Y)) ≅ Y`, and that point is `p(y)`.
pub fn projection_from_right_inverse<L: Clone + PartialEq>(
    x: &FiniteOrder<L>,
    y: &FiniteOrder<L>,
    g: &IncreasingMap<Vec<L>, Vec<L>>,
) -> Result<IncreasingMap<L, L>, DualityError> {
    let f = dual_inclusion(x, y)?;
    if g.domain.labels() != f.codomain.labels() || g.codomain.labels() != f.domain.labels() {
        return Err(DualityError::NotRightInverse);
    }
    if !f.compose(g)?.is_identity() {
        return Err(DualityError::NotRightInverse);
    }
    let (Some(lo), Some(hi)) = (y.first(), y.last()) else {
        let empty = FiniteOrder::from_distinct(Vec::new());
        return IncreasingMap::new(empty, y.clone(), Vec::new());
    };
    let lo = x.position(lo).expect("checked suborder");
    let hi = x.position(hi).expect("checked suborder");
    let hull = x.select(&(lo..=hi).collect::<Vec<_>>());
    let images = (lo..=hi)
        .map(|q| {
            // (x_q, →) is the final segment starting at position q + 1 of K(X)
            let k = q + 1;
            match g.images.iter().position(|&gm| gm >= k) {
                Some(first) if first >= 1 => Ok(first - 1),
                _ => Err(DualityError::NotRightInverse),
            }
        })
        .collect::<Result<Vec<_>, _>>()?;
    IncreasingMap::new(hull, y.clone(), images)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain(n: usize) -> FiniteOrder<usize> {
        FiniteOrder::chain(n)
    }

    fn sub(labels: &[usize]) -> FiniteOrder<usize> {
        FiniteOrder::new(labels.to_vec()).unwrap()
    }

    #[test]
    fn k_of_small_chains() {
        let k = k_finite(&chain(2));
        assert_eq!(k.points().labels(), &[vec![0, 1], vec![1], vec![]]);
        assert_eq!(k.zero(), &vec![0, 1]);
        assert!(k.one().is_empty());
        let k0 = k_finite(&chain(0));
        assert_eq!(k0.points().labels(), &[Vec::<usize>::new()]);
        for n in 0..10 {
            assert_eq!(k_finite(&chain(n)).len(), n + 1);
        }
    }

    #[test]
    fn x_of_small_lines() {
        assert_eq!(x_finite(&chain(3)).unwrap().len(), 2);
        assert!(x_finite(&chain(1)).unwrap().is_empty());
        assert_eq!(x_finite(&chain(0)), Err(DualityError::EmptyOrder));
        let xx = x_finite(k_finite(&chain(4)).points()).unwrap();
        assert_eq!(xx.len(), 4);
    }

    #[test]
    fn canonical_isomorphisms() {
        for n in 0..7 {
            assert!(embed_in_double_dual(&chain(n)).unwrap().is_bijective());
            assert!(line_in_double_dual(&chain(n + 1)).unwrap().is_bijective());
        }
    }

    #[test]
    fn dual_inclusion_examples() {
        let x = chain(3);
        let id = dual_inclusion(&x, &x).unwrap();
        assert!(id.is_identity());

        let to_empty = dual_inclusion(&x, &sub(&[])).unwrap();
        assert_eq!(to_empty.codomain().len(), 1);
        assert!(to_empty.images().iter().all(|&j| j == 0));

        // K(X) = [{0,1,2}, {1,2}, {2}, ∅] → K(Y) = [{0,2}, {2}, ∅]
        let f = dual_inclusion(&x, &sub(&[0, 2])).unwrap();
        assert_eq!(f.images(), &[0, 1, 1, 2]);
        assert_eq!(f.fiber(1), Some(1..=2));
        assert!(f.is_surjective());

        assert_eq!(dual_inclusion(&x, &sub(&[5])), Err(DualityError::NotASubset));
        assert_eq!(dual_inclusion(&x, &sub(&[2, 0])), Err(DualityError::NotASubset));
    }

    #[test]
    fn right_inverse_example() {
        let x = chain(3);
        let y = sub(&[0, 2]);
        let f = dual_inclusion(&x, &y).unwrap();
        let g = right_inverse_from_gaps(&f).unwrap();
        // the two-point fiber {1,2}, {2} resolves to its minimum {1,2}
        assert_eq!(g.images(), &[0, 1, 3]);
        assert_eq!(g.apply(&vec![2]), Some(&vec![1, 2]));
        assert!(f.compose(&g).unwrap().is_identity());
    }

    #[test]
    fn fiber_choice_follows_isolation() {
        let f = dual_inclusion(&chain(3), &sub(&[0, 2])).unwrap();
        // β not isolated from the right, α isolated from the left: take β
        let g = right_inverse_with(&f, |pos, side| !(pos == 2 && side == Side::Right)).unwrap();
        assert_eq!(g.images(), &[0, 2, 3]);
        // neither: obstruction
        let err = right_inverse_with(&f, |pos, side| {
            !((pos == 2 && side == Side::Right) || (pos == 1 && side == Side::Left))
        })
        .unwrap_err();
        assert_eq!(err, DualityError::GapObstruction { alpha: 1, beta: 2 });
    }

    #[test]
    fn projection_example() {
        let x = chain(3);
        let y = sub(&[0, 2]);
        let f = dual_inclusion(&x, &y).unwrap();
        let g = right_inverse_from_gaps(&f).unwrap();
        let p = projection_from_right_inverse(&x, &y, &g).unwrap();
        assert_eq!(p.domain().labels(), &[0, 1, 2]);
        assert_eq!(p.apply(&1), Some(&2));
        assert_eq!(p.apply(&0), Some(&0));
        assert_eq!(p.apply(&2), Some(&2));
        // the other right inverse sends the middle point down
        let g2 = IncreasingMap::new(g.domain().clone(), g.codomain().clone(), vec![0, 2, 3]).unwrap();
        let p2 = projection_from_right_inverse(&x, &y, &g2).unwrap();
        assert_eq!(p2.apply(&1), Some(&0));
    }

    #[test]
    fn projection_identity_on_full_subset() {
        let x = chain(5);
        let f = dual_inclusion(&x, &x).unwrap();
        let g = right_inverse_from_gaps(&f).unwrap();
        let p = projection_from_right_inverse(&x, &x, &g).unwrap();
        assert!(p.is_identity());
    }

    #[test]
    fn projection_rejects_non_inverse() {
        let x = chain(3);
        let y = sub(&[0, 2]);
        let f = dual_inclusion(&x, &y).unwrap();
        let g = right_inverse_from_gaps(&f).unwrap();
        let bad = IncreasingMap::new(g.domain().clone(), g.codomain().clone(), vec![0, 0, 3]).unwrap();
        assert_eq!(
            projection_from_right_inverse(&x, &y, &bad),
            Err(DualityError::NotRightInverse)
        );
    }

    #[test]
    fn map_validation() {
        assert_eq!(
            IncreasingMap::new(chain(2), chain(2), vec![1, 0]),
            Err(DualityError::NotIncreasing(0))
        );
        assert_eq!(
            IncreasingMap::new(chain(2), chain(2), vec![0]),
            Err(DualityError::LengthMismatch { domain: 2, images: 1 })
        );
        assert_eq!(
            IncreasingMap::new(chain(1), chain(2), vec![2]),
            Err(DualityError::NotInCodomain(0))
        );
        let f = IncreasingMap::new(chain(2), chain(2), vec![0, 0]).unwrap();
        assert_eq!(right_inverse_from_gaps(&f), Err(DualityError::NotSurjective(1)));
    }
}
