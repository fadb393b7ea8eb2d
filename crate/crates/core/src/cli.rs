//! The `compact-lines` command line.
//!
//! Every command produces a [`Report`]; `--json` prints it as JSON, otherwise
//! as text. Exit codes: 0 when the property holds, 1 when it fails, 2 for
//! unusable input. Diagnostics go to standard error.

use std::collections::{BTreeMap, BTreeSet};
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use crate::dsl;
use crate::duality::{
    embed_in_double_dual, k_finite, line_in_double_dual, probe_gap, x_finite, GapVerdict,
    NotGapReason,
};
use crate::kurepa::{
    build_filtration_presentation, lex_compare, sup_stable_stream, truncate_projection,
    KurepaError, KurepaPoint, StreamProbe,
};
use crate::oracle::{self, Mutation, OracleCase};
use crate::order::{self, Element, FiniteOrder};
use crate::ordinal::OrdCode;
use crate::rational;
use crate::report::{Report, Verdict};

/// Largest finite order `dual` will materialize.
pub const DUAL_BOUND: u64 = 4096;
/// Witness-chain elements shown on each side by `gap`.
const SHOWN: usize = 5;

#[derive(Debug, Parser)]
#[command(
    name = "compact-lines",
    version,
    about = "Linear orders, their dual compact lines, and gap fillers"
)]
pub struct Cli {
    /// Print the report as JSON
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Parse an order expression and print it in canonical form
    Parse { text: String },
    /// Print the dual of a finite order: its final segments (k) or the
    /// clopen final segments of a compact line (x)
    Dual { direction: Direction, expr: String },
    /// Run an exhaustive suite on finite chains
    Oracle {
        suite: Suite,
        /// Check every chain of size at most N
        #[arg(long)]
        n: Option<usize>,
        /// Rerun a single case, written `n`, `n:Y` or `n:Y:Z`
        #[arg(long)]
        case: Option<String>,
        /// Inject a defect into the construction of K(X)
        #[arg(long)]
        mutate: Option<MutationArg>,
    },
    /// Check that y(delta) fills a proper gap of level delta of kurepa(kappa; S)
    Gap {
        #[arg(long)]
        kappa: String,
        /// Comma-separated limit ordinals
        #[arg(long, default_value = "")]
        s: String,
        #[arg(long)]
        delta: String,
        #[arg(long, default_value_t = 100)]
        depth: usize,
    },
    /// Compare two points of the lexicographic order
    KurepaCmp { p: String, q: String },
    /// Supremum of a scripted stream of points
    SupStream {
        file: PathBuf,
        /// Number of leading terms to check
        #[arg(long, default_value_t = 1000)]
        probe: usize,
        /// Largest support accepted for the supremum
        #[arg(long, default_value_t = 64)]
        max_support: usize,
        /// A point claimed to bound the stream; the supremum must lie below it
        #[arg(long)]
        upper: Vec<String>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Direction {
    K,
    X,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Duality,
    Lemma33,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MutationArg {
    DropSegment,
}

/// Input that a command cannot work with.
struct InputError {
    instance: String,
    message: String,
}

fn input(instance: impl Into<String>, message: impl ToString) -> InputError {
    InputError {
        instance: instance.into(),
        message: message.to_string(),
    }
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Parse { .. } => "parse",
            Command::Dual { .. } => "dual",
            Command::Oracle { .. } => "oracle",
            Command::Gap { .. } => "gap",
            Command::KurepaCmp { .. } => "kurepa-cmp",
            Command::SupStream { .. } => "sup-stream",
        }
    }
}

/// Runs one command, writing the report to `out` and diagnostics to `err`.
/// Returns the exit code.
pub fn run(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let start = Instant::now();
    let name = cli.command.name();
    let mut report = match dispatch(&cli.command) {
        Ok(r) => r,
        Err(e) => {
            let _ = writeln!(err, "error: {}", e.message);
            let mut r = Report::new(name, e.instance, "input");
            r.verdict = Verdict::Error;
            r.failures.push(e.message);
            r
        }
    };
    report.elapsed_ms = start.elapsed().as_millis() as u64;
    if cli.json {
        let _ = writeln!(out, "{}", report.to_json());
    } else if report.verdict != Verdict::Error {
        let _ = write!(out, "{}", report.to_text());
    }
    report.verdict.exit_code()
}

fn dispatch(command: &Command) -> Result<Report, InputError> {
    match command {
        Command::Parse { text } => cmd_parse(text),
        Command::Dual { direction, expr } => cmd_dual(*direction, expr),
        Command::Oracle {
            suite,
            n,
            case,
            mutate,
        } => cmd_oracle(*suite, *n, case.as_deref(), *mutate),
        Command::Gap {
            kappa,
            s,
            delta,
            depth,
        } => cmd_gap(kappa, s, delta, *depth),
        Command::KurepaCmp { p, q } => cmd_kurepa_cmp(p, q),
        Command::SupStream {
            file,
            probe,
            max_support,
            upper,
        } => cmd_sup_stream(file, *probe, *max_support, upper),
    }
}

fn cmd_parse(text: &str) -> Result<Report, InputError> {
    let e = dsl::parse_expr(text).map_err(|err| input(text, err))?;
    let printed = e.to_string();
    let mut r = Report::new("parse", printed.clone(), "round-trip");
    r.cases = 1;
    r.detail("expression", &printed);
    r.detail("size", order::size(&e).map_or("infinite".to_string(), |n| n.to_string()));
    match dsl::parse_expr(&printed) {
        Ok(back) if back == e => {}
        Ok(back) => {
            r.fail(format!("reprinted text parses to {back}"));
        }
        Err(err) => {
            r.fail(format!("reprinted text does not parse: {err}"));
        }
    }
    Ok(r)
}

fn segment(labels: &[Element]) -> String {
    let parts: Vec<String> = labels.iter().map(Element::to_string).collect();
    format!("{{{}}}", parts.join(", "))
}

fn chain_text(points: &FiniteOrder<Vec<Element>>) -> String {
    let parts: Vec<String> = points.iter().map(|s| segment(s)).collect();
    parts.join(" < ")
}

fn cmd_dual(direction: Direction, text: &str) -> Result<Report, InputError> {
    let e = dsl::parse_expr(text).map_err(|err| input(text, err))?;
    let instance = e.to_string();
    match order::size(&e) {
        None => return Err(input(instance, format!("not finite: {e} has infinitely many elements"))),
        Some(n) if n > DUAL_BOUND => {
            return Err(input(instance, format!("{n} elements exceed the bound {DUAL_BOUND}")))
        }
        Some(_) => {}
    }
    let chain = order::materialize(&e).expect("finite");
    let mut r = Report::new("dual", instance.clone(), "canonical-isomorphism");
    r.cases = 1;
    r.detail("input", &chain);
    let iso = match direction {
        Direction::K => {
            let k = k_finite(&chain);
            r.detail("points", k.len());
            r.detail("K", chain_text(k.points()));
            embed_in_double_dual(&chain).map(|m| m.is_bijective())
        }
        Direction::X => {
            let x = x_finite(&chain).map_err(|err| input(instance, err))?;
            r.detail("points", x.len());
            r.detail("X", chain_text(&x));
            line_in_double_dual(&chain).map(|m| m.is_bijective())
        }
    };
    match iso {
        Ok(true) => {
            r.detail("canonical isomorphism", "yes");
        }
        Ok(false) => {
            r.detail("canonical isomorphism", "no");
            r.fail("canonical map is not a bijection");
        }
        Err(err) => {
            r.fail(err.to_string());
        }
    }
    Ok(r)
}

fn cmd_oracle(
    suite: Suite,
    n: Option<usize>,
    case: Option<&str>,
    mutate: Option<MutationArg>,
) -> Result<Report, InputError> {
    let suite_name = match suite {
        Suite::Duality => "duality",
        Suite::Lemma33 => "lemma33",
    };
    let mutation = mutate.map(|MutationArg::DropSegment| Mutation::DropSegment);
    let instance = match (n, case) {
        (_, Some(c)) => format!("case {c}"),
        (Some(n), None) => format!("n {n}"),
        (None, None) => String::new(),
    };
    if mutation.is_some() && suite != Suite::Duality {
        return Err(input(instance, "--mutate applies to the duality suite only"));
    }
    if let Some(text) = case {
        let case: OracleCase = text.parse().map_err(|err| input(instance.clone(), err))?;
        let result = match suite {
            Suite::Duality => oracle::run_duality_case(&case, mutation),
            Suite::Lemma33 => {
                if case.subsets.len() != 1 {
                    return Err(input(instance, "a lemma33 case is written `n:Y`"));
                }
                oracle::run_lemma33_case(&case)
            }
        };
        let mut r = Report::new("oracle", format!("case {case}"), suite_name);
        r.cases = 1;
        if let Err(reason) = result {
            r.fail(oracle::replay_command(suite_name, &case, mutation, &reason));
        }
        return Ok(r);
    }
    let Some(n) = n else {
        return Err(input(instance, "give --n or --case"));
    };
    let result = match suite {
        Suite::Duality => oracle::exhaustive_duality_with(n, mutation),
        Suite::Lemma33 => oracle::exhaustive_lemma33(n),
    };
    let o = result.map_err(|err| input(instance, err))?;
    let mut r = Report::new("oracle", o.instance, o.property);
    r.cases = o.cases;
    for f in o.failures {
        r.fail(f);
    }
    Ok(r)
}

fn ordinal(text: &str, instance: &str) -> Result<OrdCode, InputError> {
    text.parse()
        .map_err(|err| input(instance, format!("invalid ordinal: {err}")))
}

fn cmd_gap(kappa: &str, s: &str, delta: &str, depth: usize) -> Result<Report, InputError> {
    let instance = format!("kappa {kappa} s {s} delta {delta} depth {depth}");
    let kappa = ordinal(kappa, &instance)?;
    let fillers: BTreeSet<OrdCode> = s
        .split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| ordinal(t, &instance))
        .collect::<Result<_, _>>()?;
    if let Some(bad) = fillers.iter().find(|d| !d.is_limit() || **d >= kappa) {
        return Err(input(instance, format!("invalid ordinal: {bad} in S is not a limit below {kappa}")));
    }
    let delta = ordinal(delta, &instance)?;
    if !delta.is_limit() {
        return Err(input(instance, format!("invalid ordinal: {delta} is not a limit")));
    }
    if delta > kappa {
        return Err(input(instance, format!("invalid ordinal: {delta} exceeds kappa {kappa}")));
    }
    if depth == 0 {
        return Err(input(instance, "depth must be at least 1"));
    }
    let ambient = order::OrderExpr::kurepa(kappa, fillers.iter().copied())
        .map_err(|e| input(instance.clone(), e.to_string()))?;
    let instance = format!("{ambient} level {delta}");
    let mut r = Report::new("gap", instance, "proper-gap");
    let y = KurepaPoint::Y(delta);
    r.detail("point", &y);
    if !fillers.contains(&delta) {
        let v = GapVerdict::NotGap(NotGapReason::NoFiller);
        r.detail("verdict", v);
        r.fail(format!("{y} is not an element: {delta} is not in S"));
        return Ok(r);
    }
    let level = build_filtration_presentation(kappa, &fillers, delta)
        .map_err(|err| input(r.instance.clone(), err))?;
    match probe_gap(&Element::Point(y.clone()), &level, depth) {
        Ok(probe) => {
            r.cases = (probe.below.len() + probe.above.len()) as u64;
            r.detail("verdict", probe.verdict);
            let shown = |chain: &[Element], sep: &str| {
                let parts: Vec<String> = chain.iter().take(SHOWN).map(Element::to_string).collect();
                parts.join(sep)
            };
            r.detail("below", shown(&probe.below, " < "));
            r.detail("above", shown(&probe.above, " > "));
            if probe.verdict != GapVerdict::FillsToDepth(depth) {
                r.fail(format!("{y} does not fill a gap: {}", probe.verdict));
            }
        }
        Err(err) => {
            r.fail(err.to_string());
        }
    }
    let truncation = match truncate_projection(&y, delta) {
        Err(KurepaError::InfiniteTruncation(_)) => "infinite support".to_string(),
        Err(err) => err.to_string(),
        Ok(t) => t.to_string(),
    };
    r.detail("truncation", truncation);
    Ok(r)
}

fn point(text: &str, instance: &str) -> Result<KurepaPoint, InputError> {
    text.parse().map_err(|err| input(instance, err))
}

fn cmd_kurepa_cmp(p: &str, q: &str) -> Result<Report, InputError> {
    let instance = format!("{p} {q}");
    let a = point(p, &instance)?;
    let b = point(q, &instance)?;
    let mut r = Report::new("kurepa-cmp", format!("{a} {b}"), "lexCompare");
    r.cases = 1;
    let symbol = match lex_compare(&a, &b) {
        std::cmp::Ordering::Less => "<",
        std::cmp::Ordering::Equal => "=",
        std::cmp::Ordering::Greater => ">",
    };
    r.detail("order", format!("{a} {symbol} {b}"));
    match a.first_difference(&b) {
        Some(alpha) => {
            r.detail("first difference", alpha);
            r.detail("left value", rational::format(&a.coord_at(alpha)));
            r.detail("right value", rational::format(&b.coord_at(alpha)));
        }
        None => {
            r.detail("first difference", "none");
        }
    }
    Ok(r)
}

/// A stream file: one point per line, then a `stab:` line followed by
/// `<ord> -> <index>` lines. Blank lines and lines starting with `#` are
/// skipped.
///
/// The entry `γ -> n` claims that every coordinate below `γ` is constant from
/// term `n` on. Terms past the last line repeat the last point, so with no
/// applicable entry the claim defaults to the last index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StreamScript {
    pub terms: Vec<KurepaPoint>,
    pub stab: BTreeMap<OrdCode, usize>,
}

impl StreamScript {
    pub fn parse(text: &str) -> Result<Self, String> {
        let mut terms = Vec::new();
        let mut stab = BTreeMap::new();
        let mut in_table = false;
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            let at = |msg: String| format!("line {}: {msg}", i + 1);
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if line.eq_ignore_ascii_case("stab:") {
                if in_table {
                    return Err(at("second `stab:` section".into()));
                }
                in_table = true;
                continue;
            }
            if in_table {
                let (ord, index) = line
                    .split_once("->")
                    .ok_or_else(|| at("expected `<ord> -> <index>`".into()))?;
                let ord: OrdCode = ord.parse().map_err(|e| at(format!("{e}")))?;
                let index: usize = index
                    .trim()
                    .parse()
                    .map_err(|_| at(format!("invalid index `{}`", index.trim())))?;
                if stab.insert(ord, index).is_some() {
                    return Err(at(format!("{ord} listed twice")));
                }
            } else {
                terms.push(line.parse().map_err(|e| at(format!("{e}")))?);
            }
        }
        if terms.is_empty() {
            return Err("the stream has no terms".into());
        }
        Ok(StreamScript { terms, stab })
    }

    pub fn term(&self, n: usize) -> KurepaPoint {
        self.terms[n.min(self.terms.len() - 1)].clone()
    }

    /// The certificate for `γ`: the entry with the least listed bound at or
    /// above `γ`.
    pub fn stab(&self, gamma: OrdCode) -> usize {
        self.stab
            .range(gamma..)
            .next()
            .map_or(self.terms.len() - 1, |(_, n)| *n)
    }
}

fn cmd_sup_stream(
    file: &PathBuf,
    probe: usize,
    max_support: usize,
    upper: &[String],
) -> Result<Report, InputError> {
    let instance = file.display().to_string();
    let text = std::fs::read_to_string(file)
        .map_err(|err| input(instance.clone(), format!("cannot read {instance}: {err}")))?;
    let script = StreamScript::parse(&text).map_err(|err| input(instance.clone(), err))?;
    let uppers = upper
        .iter()
        .map(|u| point(u, &instance))
        .collect::<Result<Vec<_>, _>>()?;
    if probe == 0 {
        return Err(input(instance, "--probe must be positive"));
    }
    let mut r = Report::new("sup-stream", instance.clone(), "supStableStream");
    r.cases = probe as u64;
    r.detail("terms", script.terms.len());
    let settings = StreamProbe {
        len: probe,
        max_support,
    };
    match sup_stable_stream(|n| script.term(n), |g| script.stab(g), settings, &uppers) {
        Ok(g) => {
            r.detail("supremum", &g);
            r.detail("support", g.support_len());
        }
        Err(KurepaError::PreconditionViolated(msg)) => return Err(input(instance, msg)),
        Err(err) => {
            r.fail(err.to_string());
        }
    }
    Ok(r)
}
