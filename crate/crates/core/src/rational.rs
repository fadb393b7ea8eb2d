//! Exact rationals and their `p/q` text form.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid rational `{0}`")]
pub struct RationalParseError(pub String);

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// Always `p/q` in lowest terms, integers included (`3/1`).
pub fn format(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// Accepts `p/q` and bare integers `p`, with an optional leading `-` or `+`.
pub fn parse(text: &str) -> Result<Rational, RationalParseError> {
    let bad = || RationalParseError(text.to_owned());
    let integer = |s: &str| -> Result<BigInt, RationalParseError> {
        let digits = s.strip_prefix(['-', '+']).unwrap_or(s);
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        s.parse::<BigInt>().map_err(|_| bad())
    };
    let t = text.trim();
    match t.split_once('/') {
        Some((p, q)) => {
            let p = integer(p.trim())?;
            let q = integer(q.trim())?;
            if q.is_zero() || q.is_negative() {
                return Err(bad());
            }
            Ok(Rational::new(p, q))
        }
        None => Ok(Rational::from_integer(integer(t)?)),
    }
}

pub fn midpoint(a: &Rational, b: &Rational) -> Rational {
    (a + b) / int(2)
}

/// The nonzero rationals `1, -1, 1/2, -1/2, 2, -2, 1/3, ...`: Calkin–Wilf
/// order, each value followed by its negative.
pub fn nonzero_rationals() -> impl Iterator<Item = Rational> {
    std::iter::successors(Some(Rational::one()), |q| {
        // Calkin–Wilf successor: 1 / (2⌊q⌋ − q + 1)
        let floor = q.floor();
        Some((floor.clone() + floor - q + Rational::one()).recip())
    })
    .flat_map(|q| [q.clone(), -q])
}

/// The `n`-th term of [`nonzero_rationals`].
pub fn nth_nonzero(n: u64) -> Rational {
    nonzero_rationals().nth(n as usize).expect("infinite sequence")
}
