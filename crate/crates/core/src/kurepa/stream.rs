use std::collections::BTreeSet;

use super::{lex_compare, FinSuppVec, KurepaError, KurepaPoint};
use crate::ordinal::OrdCode;

/// How much of a stream to inspect.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StreamProbe {
    /// Number of leading terms that are checked for monotonicity and bounded.
    pub len: usize,
    /// Largest support the assembled supremum may have before it is treated as
    /// infinite.
    pub max_support: usize,
}

impl Default for StreamProbe {
    fn default() -> Self {
        StreamProbe {
            len: 1000,
            max_support: 64,
        }
    }
}

/// Supremum of a non-decreasing stream with a stabilization certificate.
///
/// `stab(γ)` claims an index past which every coordinate below `γ` is constant.
/// The supremum takes at each coordinate `α` the value of term `stab(α + 1)`,
/// and every claim is re-checked over the probed range (and at least one step
/// past the claimed index). The result is verified to bound the probed prefix
/// and to lie below each of `upper_bounds`.
pub fn sup_stable_stream<S, T>(
    stream: S,
    stab: T,
    probe: StreamProbe,
    upper_bounds: &[KurepaPoint],
) -> Result<FinSuppVec, KurepaError>
where
    S: Fn(usize) -> KurepaPoint,
    T: Fn(OrdCode) -> usize,
{
    if probe.len == 0 {
        return Err(KurepaError::PreconditionViolated(
            "probe length must be positive".into(),
        ));
    }
    let terms: Vec<KurepaPoint> = (0..probe.len).map(&stream).collect();
    let term = |n: usize| -> KurepaPoint {
        terms.get(n).cloned().unwrap_or_else(|| stream(n))
    };

    for (index, pair) in terms.windows(2).enumerate() {
        if lex_compare(&pair[0], &pair[1]).is_gt() {
            return Err(KurepaError::NotIncreasing { index });
        }
    }

    let mut coords = BTreeSet::new();
    for t in &terms {
        match t {
            KurepaPoint::Vec(v) => coords.extend(v.support()),
            // one more fundamental term than the support bound allows, so a
            // stabilized filler is reported rather than silently truncated
            KurepaPoint::Y(delta) => coords.extend(
                (0..=probe.max_support as u64).map(|n| delta.fundamental(n).expect("limit")),
            ),
        }
    }

    let mut sup = FinSuppVec::zero();
    for &alpha in &coords {
        let claimed = stab(alpha.succ());
        let value = term(claimed).coord_at(alpha);
        let end = probe.len.max(claimed + 2);
        for n in claimed + 1..end {
            if term(n).coord_at(alpha) != value {
                return Err(KurepaError::StabilizationViolation {
                    coord: alpha,
                    claimed,
                    changed_at: n,
                });
            }
        }
        sup.set(alpha, value);
    }

    if sup.support_len() > probe.max_support {
        return Err(KurepaError::InfiniteSupportSuspected {
            found: sup.support_len(),
            bound: probe.max_support,
        });
    }

    let g = KurepaPoint::Vec(sup);
    if let Some(index) = terms.iter().position(|t| lex_compare(t, &g).is_gt()) {
        return Err(KurepaError::NotUpperBound { index });
    }
    for u in upper_bounds {
        if terms.iter().any(|t| lex_compare(t, u).is_gt()) {
            return Err(KurepaError::PreconditionViolated(format!(
                "{u} does not bound the probed terms"
            )));
        }
        if lex_compare(&g, u).is_gt() {
            return Err(KurepaError::NotLeast(u.to_string()));
        }
    }
    match g {
        KurepaPoint::Vec(v) => Ok(v),
        KurepaPoint::Y(_) => unreachable!(),
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
    fn constant_stream() {
        let v = FinSuppVec::from_pairs([(w(0, 1), ratio(3, 4)), (w(2, 5), int(-1))]);
        let p = KurepaPoint::Vec(v.clone());
        let got = sup_stable_stream(|_| p.clone(), |_| 0, StreamProbe::default(), &[]).unwrap();
        assert_eq!(got, v);
    }

    #[test]
    fn unstable_first_coordinate() {
        let stream = |n: usize| KurepaPoint::vector([(w(0, 0), int(1) - ratio(1, n as i64 + 1))]);
        for claim in [0usize, 5, 999, 5000] {
            let err = sup_stable_stream(stream, |_| claim, StreamProbe::default(), &[]).unwrap_err();
            assert!(matches!(err, KurepaError::StabilizationViolation { .. }), "{err:?}");
        }
    }

    #[test]
    fn decreasing_stream_is_rejected() {
        let stream = |n: usize| KurepaPoint::vector([(w(0, 0), int(-(n as i64)))]);
        let err = sup_stable_stream(stream, |_| 0, StreamProbe::default(), &[]).unwrap_err();
        assert_eq!(err, KurepaError::NotIncreasing { index: 0 });
    }

    #[test]
    fn stabilized_filler_is_flagged() {
        let y = KurepaPoint::Y(OrdCode::limit(2));
        let probe = StreamProbe {
            len: 10,
            max_support: 8,
        };
        let err = sup_stable_stream(|_| y.clone(), |_| 0, probe, &[]).unwrap_err();
        assert_eq!(err, KurepaError::InfiniteSupportSuspected { found: 9, bound: 8 });
    }

    #[test]
    fn upper_bound_probes() {
        let g = FinSuppVec::from_pairs([(w(0, 2), int(1))]);
        let p = KurepaPoint::Vec(g.clone());
        let above = KurepaPoint::vector([(w(0, 1), int(1))]);
        assert_eq!(
            sup_stable_stream(|_| p.clone(), |_| 0, StreamProbe::default(), &[above]).unwrap(),
            g
        );
        let below = KurepaPoint::zero();
        assert!(matches!(
            sup_stable_stream(|_| p.clone(), |_| 0, StreamProbe::default(), &[below]),
            Err(KurepaError::PreconditionViolated(_))
        ));
    }

    #[test]
    fn wrong_certificate_fails_bound_check() {
        // the certificate points at term 0 for coordinate 3, which is stale
        let stream = |n: usize| {
            if n == 0 {
                KurepaPoint::zero()
            } else {
                KurepaPoint::vector([(w(0, 3), int(1))])
            }
        };
        let probe = StreamProbe {
            len: 1,
            max_support: 4,
        };
        let got = sup_stable_stream(stream, |_| 0, probe, &[]).unwrap();
        assert!(got.is_zero());
        let probe = StreamProbe {
            len: 5,
            max_support: 4,
        };
        let err = sup_stable_stream(stream, |_| 0, probe, &[]).unwrap_err();
        assert!(matches!(err, KurepaError::StabilizationViolation { .. }));
    }
}
