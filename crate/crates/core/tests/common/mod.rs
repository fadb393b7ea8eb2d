#![allow(dead_code)]

use std::cmp::Ordering;
use std::collections::BTreeSet;

use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::Rng;

use compact_lines::kurepa::{FinSuppVec, KurepaPoint};
use compact_lines::order::{self, Element, Half, OrderExpr};
use compact_lines::ordinal::OrdCode;
use compact_lines::rational::{ratio, Rational};

pub fn random_rational(rng: &mut impl Rng) -> Rational {
    ratio(rng.gen_range(-12..=12), rng.gen_range(1..=6))
}

pub fn random_ord(rng: &mut impl Rng, max_omega: u64) -> OrdCode {
    OrdCode::new(rng.gen_range(0..=max_omega), rng.gen_range(0..6))
}

/// A random vector supported below `kappa`.
pub fn random_vector(rng: &mut impl Rng, kappa: OrdCode, max_len: usize) -> FinSuppVec {
    let mut v = FinSuppVec::zero();
    if kappa.is_zero() {
        return v;
    }
    for _ in 0..rng.gen_range(0..=max_len) {
        let a = rng.gen_range(0..=kappa.omega_part());
        let b = rng.gen_range(0..8);
        let c = OrdCode::new(a, b);
        if c < kappa {
            v.set(c, random_rational(rng));
        }
    }
    v
}

/// Vectors that agree with `y_δ` on a prefix of its fundamental range, then
/// deviate, so comparisons with fillers are decided deep in the range.
pub fn near_filler(rng: &mut impl Rng, delta: OrdCode) -> FinSuppVec {
    let n = rng.gen_range(0..10);
    let mut v = FinSuppVec::indicator((0..n).map(|i| delta.fundamental(i).unwrap()));
    match rng.gen_range(0..3) {
        0 => {}
        1 => v.set(delta.fundamental(n).unwrap(), random_rational(rng)),
        _ => {
            let below = OrdCode::new(delta.omega_part() - 1, 0);
            v.set(below, random_rational(rng));
        }
    }
    v
}

/// A random point of `KurepaX(kappa, fillers)`.
pub fn random_point(rng: &mut impl Rng, kappa: OrdCode, fillers: &[OrdCode]) -> KurepaPoint {
    match rng.gen_range(0..4) {
        0 if !fillers.is_empty() => KurepaPoint::Y(*fillers.choose(rng).unwrap()),
        1 if !fillers.is_empty() => {
            let delta = *fillers.choose(rng).unwrap();
            KurepaPoint::Vec(near_filler(rng, delta))
        }
        _ => KurepaPoint::Vec(random_vector(rng, kappa, 5)),
    }
}

/// Value of a point at a coordinate, read straight from the definitions:
/// `y_{ω·a}` is the indicator of `{ω·(a−1) + n : n ≥ 1}`.
pub fn naive_value(p: &KurepaPoint, c: OrdCode) -> Rational {
    match p {
        KurepaPoint::Vec(v) => v
            .iter()
            .find(|(k, _)| *k == c)
            .map_or_else(Rational::zero, |(_, q)| q.clone()),
        KurepaPoint::Y(d) => {
            if c.omega_part() + 1 == d.omega_part() && c.finite_part() >= 1 {
                Rational::one()
            } else {
                Rational::zero()
            }
        }
    }
}

fn extent(p: &KurepaPoint) -> (u64, u64) {
    match p {
        KurepaPoint::Vec(v) => v
            .support()
            .fold((0, 0), |(a, b), c| (a.max(c.omega_part()), b.max(c.finite_part()))),
        KurepaPoint::Y(d) => (d.omega_part() - 1, 0),
    }
}

/// Lexicographic comparison by scanning every coordinate `ω·a + b` with `a`
/// and `b` up to the largest ones either point mentions (plus two).
pub fn naive_lex(p: &KurepaPoint, q: &KurepaPoint) -> Ordering {
    let (pa, pb) = extent(p);
    let (qa, qb) = extent(q);
    for a in 0..=pa.max(qa) {
        for b in 0..=pb.max(qb) + 2 {
            let c = OrdCode::new(a, b);
            let ord = naive_value(p, c).cmp(&naive_value(q, c));
            if ord != Ordering::Equal {
                return ord;
            }
        }
    }
    Ordering::Equal
}

pub fn random_kurepa(rng: &mut impl Rng) -> OrderExpr {
    let a = rng.gen_range(1..5);
    let kappa = OrdCode::new(a, rng.gen_range(0..3));
    let fillers: BTreeSet<OrdCode> = (1..=a)
        .map(OrdCode::limit)
        .filter(|d| *d < kappa && rng.gen_bool(0.5))
        .collect();
    OrderExpr::kurepa(kappa, fillers).unwrap()
}

/// A random well-formed expression of bounded depth.
pub fn random_expr(rng: &mut impl Rng, depth: u32) -> OrderExpr {
    if depth == 0 || rng.gen_bool(0.35) {
        return match rng.gen_range(0..6) {
            0 | 1 => OrderExpr::Fin(rng.gen_range(0..6)),
            2 => OrderExpr::Omega,
            3 => OrderExpr::Rationals,
            4 => OrderExpr::LexQ(random_ord(rng, 3)),
            _ => random_kurepa(rng),
        };
    }
    match rng.gen_range(0..3) {
        0 => OrderExpr::rev(random_expr(rng, depth - 1)),
        1 => OrderExpr::sum(random_expr(rng, depth - 1), random_expr(rng, depth - 1)),
        _ => {
            let inner = random_expr(rng, depth - 1);
            let points: Vec<Element> = (0..rng.gen_range(0..4))
                .filter_map(|_| random_element(rng, &inner))
                .collect();
            order::duplicate(&inner, points).unwrap()
        }
    }
}

/// A random element of `e`, `None` when `e` is empty.
pub fn random_element(rng: &mut impl Rng, e: &OrderExpr) -> Option<Element> {
    Some(match e {
        OrderExpr::Fin(0) => return None,
        OrderExpr::Fin(n) => Element::Index(rng.gen_range(0..*n)),
        OrderExpr::Omega => Element::Nat(rng.gen_range(0..50)),
        OrderExpr::Rationals => Element::Rat(random_rational(rng)),
        OrderExpr::Rev(inner) => Element::Rev(Box::new(random_element(rng, inner)?)),
        OrderExpr::Sum(l, u) => {
            let lower_first = rng.gen_bool(0.5);
            let pick = |rng: &mut _, lower: bool| {
                if lower {
                    random_element(rng, l).map(|x| Element::Lower(Box::new(x)))
                } else {
                    random_element(rng, u).map(|x| Element::Upper(Box::new(x)))
                }
            };
            match pick(rng, lower_first) {
                Some(x) => x,
                None => pick(rng, !lower_first)?,
            }
        }
        OrderExpr::LexQ(kappa) => Element::Point(KurepaPoint::Vec(random_vector(rng, *kappa, 4))),
        OrderExpr::KurepaX { kappa, fillers } => {
            let fillers: Vec<OrdCode> = fillers.iter().copied().collect();
            Element::Point(random_point(rng, *kappa, &fillers))
        }
        OrderExpr::Dup { inner, points } => {
            let x = random_element(rng, inner)?;
            let half = points
                .contains(&x)
                .then(|| if rng.gen_bool(0.5) { Half::Minus } else { Half::Plus });
            Element::Dup(Box::new(x), half)
        }
    })
}

/// Output of one run of the command-line tool.
pub struct Run {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn run_cli<S: AsRef<std::ffi::OsStr>>(args: &[S]) -> Run {
    let out = std::process::Command::new(env!("CARGO_BIN_EXE_compact-lines"))
        .args(args)
        .output()
        .expect("binary runs");
    Run {
        code: out.status.code().expect("exited normally"),
        stdout: String::from_utf8(out.stdout).expect("utf-8"),
        stderr: String::from_utf8(out.stderr).expect("utf-8"),
    }
}

pub fn report_schema() -> jsonschema::JSONSchema {
    let schema: serde_json::Value = serde_json::from_str(compact_lines::report::SCHEMA).unwrap();
    jsonschema::JSONSchema::compile(&schema).expect("schema compiles")
}

/// Parses a JSON report and checks it against the schema.
pub fn validated(schema: &jsonschema::JSONSchema, text: &str) -> Result<serde_json::Value, String> {
    let value: serde_json::Value = serde_json::from_str(text).map_err(|e| e.to_string())?;
    if let Err(errors) = schema.validate(&value) {
        let msgs: Vec<String> = errors.map(|e| e.to_string()).collect();
        return Err(msgs.join("; "));
    }
    Ok(value)
}

/// A report with the timing field zeroed, for byte comparisons.
pub fn without_timing(text: &str) -> String {
    let mut value: serde_json::Value = serde_json::from_str(text).unwrap();
    value["elapsed_ms"] = serde_json::Value::from(0);
    value.to_string()
}
