use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};

use super::KurepaError;
use crate::ordinal::OrdCode;
use crate::rational::{self, Rational};

/// A rational-valued function on ordinals with finite support. Zero values are
/// never stored, so the key set is exactly the support.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct FinSuppVec {
    coords: BTreeMap<OrdCode, Rational>,
}

impl FinSuppVec {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_pairs<I>(pairs: I) -> Self
    where
        I: IntoIterator<Item = (OrdCode, Rational)>,
    {
        let mut v = Self::zero();
        for (k, q) in pairs {
            v.set(k, q);
        }
        v
    }

    /// The indicator of a finite set of coordinates.
    pub fn indicator<I: IntoIterator<Item = OrdCode>>(coords: I) -> Self {
        Self::from_pairs(coords.into_iter().map(|c| (c, Rational::one())))
    }

    pub fn get(&self, alpha: OrdCode) -> Rational {
        self.coords.get(&alpha).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn set(&mut self, alpha: OrdCode, value: Rational) {
        if value.is_zero() {
            self.coords.remove(&alpha);
        } else {
            self.coords.insert(alpha, value);
        }
    }

    pub fn support(&self) -> impl DoubleEndedIterator<Item = OrdCode> + '_ {
        self.coords.keys().copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (OrdCode, &Rational)> {
        self.coords.iter().map(|(k, v)| (*k, v))
    }

    pub fn support_len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn max_coord(&self) -> Option<OrdCode> {
        self.coords.keys().next_back().copied()
    }

    /// Restriction to the coordinates strictly below `bound`.
    pub fn restrict_below(&self, bound: OrdCode) -> Self {
        FinSuppVec {
            coords: self
                .coords
                .range(..bound)
                .map(|(k, v)| (*k, v.clone()))
                .collect(),
        }
    }
}

/// A point of the lexicographically ordered space: either a finite-support
/// vector or the gap filler `y_δ`, the indicator of the fundamental sequence of
/// the limit `δ`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum KurepaPoint {
    Vec(FinSuppVec),
    Y(OrdCode),
}

impl KurepaPoint {
    pub fn zero() -> Self {
        KurepaPoint::Vec(FinSuppVec::zero())
    }

    pub fn vector<I>(pairs: I) -> Self
    where
        I: IntoIterator<Item = (OrdCode, Rational)>,
    {
        KurepaPoint::Vec(FinSuppVec::from_pairs(pairs))
    }

    /// `y_δ`; `delta` must be a limit.
    pub fn y(delta: OrdCode) -> Result<Self, KurepaError> {
        if delta.is_limit() {
            Ok(KurepaPoint::Y(delta))
        } else {
            Err(KurepaError::NotLimit(delta))
        }
    }

    pub fn as_vec(&self) -> Option<&FinSuppVec> {
        match self {
            KurepaPoint::Vec(v) => Some(v),
            KurepaPoint::Y(_) => None,
        }
    }

    /// Value of the point at coordinate `alpha`.
    pub fn coord_at(&self, alpha: OrdCode) -> Rational {
        match self {
            KurepaPoint::Vec(v) => v.get(alpha),
            KurepaPoint::Y(delta) => {
                if delta.fundamental_index(alpha).is_some() {
                    Rational::one()
                } else {
                    Rational::zero()
                }
            }
        }
    }

    /// Every coordinate where the point can be nonzero, increasing. Infinite for
    /// `Y` points, whose support is produced lazily.
    fn candidates(&self) -> Box<dyn Iterator<Item = OrdCode> + '_> {
        match self {
            KurepaPoint::Vec(v) => Box::new(v.support()),
            KurepaPoint::Y(delta) => {
                let delta = *delta;
                Box::new((0u64..).map(move |n| delta.fundamental(n).expect("limit")))
            }
        }
    }

    fn finite_support_len(&self) -> usize {
        match self {
            KurepaPoint::Vec(v) => v.support_len(),
            KurepaPoint::Y(_) => 0,
        }
    }

    /// Least coordinate where `self` and `other` differ, `None` when equal.
    ///
    /// Scans the union of both supports in increasing order. Two distinct `Y`
    /// points separate at the first merged candidate because fundamental ranges
    /// of distinct limits are disjoint; a `Y` point and a vector separate no later
    /// than the first fundamental term missing from the vector's support.
    pub fn first_difference(&self, other: &KurepaPoint) -> Option<OrdCode> {
        if let (KurepaPoint::Y(a), KurepaPoint::Y(b)) = (self, other) {
            if a == b {
                return None;
            }
        }
        let budget = 2 * (self.finite_support_len() + other.finite_support_len()) + 4;
        let mut left = self.candidates().peekable();
        let mut right = other.candidates().peekable();
        for _ in 0..budget {
            let next = match (left.peek(), right.peek()) {
                (None, None) => return None,
                (Some(&a), None) => a,
                (None, Some(&b)) => b,
                (Some(&a), Some(&b)) => a.min(b),
            };
            if left.peek() == Some(&next) {
                left.next();
            }
            if right.peek() == Some(&next) {
                right.next();
            }
            if self.coord_at(next) != other.coord_at(next) {
                return Some(next);
            }
        }
        panic!("lexicographic scan of {self} and {other} exceeded {budget} candidates");
    }

    /// Restriction to coordinates strictly below `bound`, when it has finite
    /// support.
    pub fn restrict_below(&self, bound: OrdCode) -> Option<FinSuppVec> {
        match self {
            KurepaPoint::Vec(v) => Some(v.restrict_below(bound)),
            KurepaPoint::Y(delta) => {
                if bound > *delta {
                    // c_δ ⊆ bound is infinite
                    return None;
                }
                let terms = (0u64..)
                    .map(|n| delta.fundamental(n).expect("limit"))
                    .take_while(|&c| c < bound);
                if bound == *delta {
                    None
                } else {
                    Some(FinSuppVec::indicator(terms))
                }
            }
        }
    }
}

/// Lexicographic comparison: the least coordinate where the points differ
/// decides.
pub fn lex_compare(p: &KurepaPoint, q: &KurepaPoint) -> Ordering {
    match p.first_difference(q) {
        None => Ordering::Equal,
        Some(alpha) => p.coord_at(alpha).cmp(&q.coord_at(alpha)),
    }
}

/// A finite-support vector strictly between `p < q`: `p` below the first
/// difference, the midpoint of the two values there, nothing above.
pub fn lex_between(p: &KurepaPoint, q: &KurepaPoint) -> Option<FinSuppVec> {
    let alpha = p.first_difference(q)?;
    if p.coord_at(alpha) >= q.coord_at(alpha) {
        return None;
    }
    let mut m = p
        .restrict_below(alpha)
        .expect("first difference lies below any gap filler's limit");
    m.set(alpha, rational::midpoint(&p.coord_at(alpha), &q.coord_at(alpha)));
    Some(m)
}

impl Ord for KurepaPoint {
    fn cmp(&self, other: &Self) -> Ordering {
        lex_compare(self, other)
    }
}

impl PartialOrd for KurepaPoint {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for FinSuppVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (k, v)) in self.coords.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{k}:{}", rational::format(v))?;
        }
        f.write_str("}")
    }
}

impl fmt::Display for KurepaPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KurepaPoint::Vec(v) => v.fmt(f),
            KurepaPoint::Y(delta) => write!(f, "y({delta})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid point `{text}`: {reason}")]
pub struct PointParseError {
    pub text: String,
    pub reason: String,
}

impl FromStr for KurepaPoint {
    type Err = PointParseError;

    /// `{coord:value,...}` with `p/q` values, or `y(w.a)`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = |reason: String| PointParseError {
            text: s.to_owned(),
            reason,
        };
        let t = s.trim();
        let lower = t.to_ascii_lowercase();
        if let Some(inner) = lower.strip_prefix("y(").and_then(|r| r.strip_suffix(')')) {
            let delta: OrdCode = inner.parse().map_err(|e: crate::ordinal::OrdParseError| err(e.to_string()))?;
            return KurepaPoint::y(delta).map_err(|e| err(e.to_string()));
        }
        let body = t
            .strip_prefix('{')
            .and_then(|r| r.strip_suffix('}'))
            .ok_or_else(|| err("expected `{...}` or `y(...)`".into()))?;
        let mut v = FinSuppVec::zero();
        if body.trim().is_empty() {
            return Ok(KurepaPoint::Vec(v));
        }
        for entry in body.split(',') {
            let (k, q) = entry
                .split_once(':')
                .ok_or_else(|| err(format!("entry `{}` lacks `:`", entry.trim())))?;
            let k: OrdCode = k.parse().map_err(|e: crate::ordinal::OrdParseError| err(e.to_string()))?;
            let q = rational::parse(q).map_err(|e| err(e.to_string()))?;
            if v.coords.contains_key(&k) {
                return Err(err(format!("coordinate {k} repeated")));
            }
            v.set(k, q);
        }
        Ok(KurepaPoint::Vec(v))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn w(a: u64, b: u64) -> OrdCode {
        OrdCode::new(a, b)
    }

    #[test]
    fn coord_at_examples() {
        let v = KurepaPoint::vector([(w(0, 2), ratio(1, 2))]);
        assert_eq!(v.coord_at(w(0, 2)), ratio(1, 2));
        assert_eq!(v.coord_at(w(0, 3)), int(0));
        let y = KurepaPoint::Y(OrdCode::limit(2));
        assert_eq!(y.coord_at(w(1, 3)), int(1));
        assert_eq!(y.coord_at(w(0, 5)), int(0));
        assert_eq!(y.coord_at(w(1, 0)), int(0));
    }

    #[test]
    fn lex_compare_examples() {
        let p = KurepaPoint::vector([(w(0, 2), ratio(1, 2))]);
        let q = KurepaPoint::vector([(w(0, 2), ratio(1, 3)), (w(1, 0), int(7))]);
        assert_eq!(lex_compare(&p, &q), Ordering::Greater);

        let y2 = KurepaPoint::Y(OrdCode::limit(2));
        let r = KurepaPoint::vector([(w(1, 1), int(2))]);
        assert_eq!(lex_compare(&y2, &r), Ordering::Less);

        let y1 = KurepaPoint::Y(OrdCode::limit(1));
        assert_eq!(lex_compare(&y1, &y2), Ordering::Greater);
        assert_eq!(y1.first_difference(&y2), Some(w(0, 1)));
        assert_eq!(lex_compare(&y2, &y2), Ordering::Equal);
    }

    #[test]
    fn y_point_against_its_own_prefix() {
        let y = KurepaPoint::Y(OrdCode::limit(3));
        let prefix = KurepaPoint::Vec(FinSuppVec::indicator((0..5).map(|n| w(2, n + 1))));
        assert_eq!(y.first_difference(&prefix), Some(w(2, 6)));
        assert_eq!(lex_compare(&prefix, &y), Ordering::Less);
    }

    #[test]
    fn y_constructor_rejects_non_limits() {
        assert!(KurepaPoint::y(OrdCode::finite(5)).is_err());
        assert!(KurepaPoint::y(OrdCode::ZERO).is_err());
        assert!(KurepaPoint::y(w(2, 0)).is_ok());
    }

    #[test]
    fn zero_values_are_not_stored() {
        let v = FinSuppVec::from_pairs([(w(0, 1), int(0)), (w(0, 2), int(3))]);
        assert_eq!(v.support_len(), 1);
        assert_eq!(v, FinSuppVec::from_pairs([(w(0, 2), int(3))]));
    }

    #[test]
    fn between_is_strict() {
        let p = KurepaPoint::vector([(w(0, 0), int(1))]);
        let q = KurepaPoint::Y(OrdCode::limit(1));
        // p > q: first difference at 0
        let m = lex_between(&q, &p).unwrap();
        let m = KurepaPoint::Vec(m);
        assert!(q < m && m < p);
        assert!(lex_between(&p, &q).is_none());
    }

    #[test]
    fn text_round_trip() {
        for text in ["{}", "{0:1/2,w.1+3:-7/1}", "y(w.4)"] {
            let p: KurepaPoint = text.parse().unwrap();
            assert_eq!(p.to_string(), text);
        }
        let p: KurepaPoint = "{ w.1 : 2 , 3:1/3 }".parse().unwrap();
        assert_eq!(p.to_string(), "{3:1/3,w.1:2/1}");
        assert!("y(5)".parse::<KurepaPoint>().is_err());
        assert!("{1:1,1:2}".parse::<KurepaPoint>().is_err());
        assert!("{1}".parse::<KurepaPoint>().is_err());
        assert!("[1:1]".parse::<KurepaPoint>().is_err());
    }
}
