//! Ordinal codes below ω², written `ω·a + b` and stored as the pair `(a, b)`.
//!
//! This is the countable stand-in for ω₁ used throughout the crate. Every limit
//! `ω·a` (with `a ≥ 1`) carries the canonical fundamental sequence
//! `fs(ω·a, n) = ω·(a−1) + (n+1)`. The ranges of these sequences are pairwise
//! disjoint for distinct limits, which is what keeps lexicographic comparison of
//! gap fillers finite.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// An ordinal `ω·omega + fin` below ω².
///
/// The derived ordering compares `(omega, fin)` lexicographically, which is the
/// ordinal order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct OrdCode {
    omega: u64,
    fin: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid ordinal `{text}`: {reason}")]
pub struct OrdParseError {
    pub text: String,
    pub reason: &'static str,
}

impl OrdCode {
    pub const ZERO: OrdCode = OrdCode { omega: 0, fin: 0 };
    pub const OMEGA: OrdCode = OrdCode { omega: 1, fin: 0 };

    pub const fn new(omega: u64, fin: u64) -> Self {
        OrdCode { omega, fin }
    }

    pub const fn finite(n: u64) -> Self {
        OrdCode { omega: 0, fin: n }
    }

    /// `ω·a`.
    pub const fn limit(a: u64) -> Self {
        OrdCode { omega: a, fin: 0 }
    }

    pub const fn omega_part(self) -> u64 {
        self.omega
    }

    pub const fn finite_part(self) -> u64 {
        self.fin
    }

    pub const fn is_zero(self) -> bool {
        self.omega == 0 && self.fin == 0
    }

    pub const fn is_limit(self) -> bool {
        self.fin == 0 && self.omega >= 1
    }

    pub const fn is_successor(self) -> bool {
        self.fin > 0
    }

    pub const fn succ(self) -> Self {
        OrdCode {
            omega: self.omega,
            fin: self.fin + 1,
        }
    }

    /// The immediate predecessor, defined only for successor ordinals.
    pub const fn pred(self) -> Option<Self> {
        if self.fin > 0 {
            Some(OrdCode {
                omega: self.omega,
                fin: self.fin - 1,
            })
        } else {
            None
        }
    }

    /// The `n`-th term of the fundamental sequence of a limit ordinal.
    pub fn fundamental(self, n: u64) -> Option<Self> {
        self.is_limit().then(|| OrdCode {
            omega: self.omega - 1,
            fin: n + 1,
        })
    }

    /// Inverse of [`OrdCode::fundamental`]: the index `n` with
    /// `fs(self, n) = alpha`, if `alpha` lies in the range.
    pub fn fundamental_index(self, alpha: OrdCode) -> Option<u64> {
        if self.is_limit() && alpha.omega + 1 == self.omega && alpha.fin >= 1 {
            Some(alpha.fin - 1)
        } else {
            None
        }
    }

    /// Least element of the fundamental sequence of `self` that is `>= alpha`.
    ///
    /// Returns `None` for non-limits and when `alpha >= self` (the sequence is
    /// cofinal, so every `alpha < self` has an answer).
    pub fn fundamental_ceiling(self, alpha: OrdCode) -> Option<u64> {
        if !self.is_limit() || alpha >= self {
            return None;
        }
        if alpha.omega + 1 < self.omega {
            Some(0)
        } else {
            Some(alpha.fin.saturating_sub(1))
        }
    }

    /// Ordinals strictly below `self`, in a fixed order that visits every one of
    /// them (diagonally when there are infinitely many).
    pub fn below(self) -> impl Iterator<Item = OrdCode> {
        let top = self;
        let tail = (0..top.fin).map(move |d| OrdCode::new(top.omega, d));
        let diagonal = (0u64..).flat_map(move |s| {
            (0..=s)
                .filter(move |&c| c < top.omega)
                .map(move |c| OrdCode::new(c, s - c))
        });
        let diagonal: Box<dyn Iterator<Item = OrdCode>> = if top.omega == 0 {
            Box::new(std::iter::empty())
        } else {
            Box::new(diagonal)
        };
        tail.chain(diagonal)
    }
}

impl fmt::Display for OrdCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.omega, self.fin) {
            (0, b) => write!(f, "{b}"),
            (a, 0) => write!(f, "w.{a}"),
            (a, b) => write!(f, "w.{a}+{b}"),
        }
    }
}

impl FromStr for OrdCode {
    type Err = OrdParseError;

    /// Accepts `b`, `w.a` and `w.a+b`; the `w` is case-insensitive.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = |reason| OrdParseError {
            text: s.to_owned(),
            reason,
        };
        let nat = |t: &str| -> Result<u64, OrdParseError> {
            if t.is_empty() || !t.bytes().all(|b| b.is_ascii_digit()) {
                return Err(err("expected a natural number"));
            }
            t.parse().map_err(|_| err("number out of range"))
        };
        let t = s.trim();
        match t.strip_prefix("w.").or_else(|| t.strip_prefix("W.")) {
            Some(rest) => match rest.split_once('+') {
                Some((a, b)) => Ok(OrdCode::new(nat(a.trim())?, nat(b.trim())?)),
                None => Ok(OrdCode::limit(nat(rest.trim())?)),
            },
            None => Ok(OrdCode::finite(nat(t)?)),
        }
    }
}
