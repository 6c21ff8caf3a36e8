//! Command-line front end: argument parsing, dispatch and output formatting.

use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use classpec::exactmath::Nat;
use classpec::gf::{FieldCtx, FieldElem};
use classpec::groups::{normalize, Engine, Epsilon, Family, GroupSpec, NormalizedSpec};
use classpec::matgrp::{witness_for_order, Witness};
use classpec::spectrum::{mu, omega_from_antichain, omega_generators};
use classpec::verify::{verify, Mode, Verdict, VerifyOptions, VerifyReport, DEFAULT_CAP};
use classpec::Error;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

pub mod exit {
    pub const OK: i32 = 0;
    pub const VIOLATION: i32 = 1;
    pub const UNSUPPORTED: i32 = 2;
    pub const PARSE: i32 = 3;
    pub const CAP_EXCEEDED: i32 = 4;
    pub const INFEASIBLE: i32 = 5;
    pub const INTERNAL: i32 = 6;
}

#[derive(Parser, Debug)]
#[command(
    name = "classpec",
    version,
    about = "Element orders of finite symplectic and orthogonal groups"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the maximal element orders (and optionally all element orders).
    Spectrum(SpectrumArgs),
    /// Compare the formula against element orders of the matrix group.
    Verify(VerifyArgs),
    /// Print a matrix of a given order.
    Witness(WitnessArgs),
}

#[derive(Args, Debug)]
struct GroupArgs {
    /// sp, psp, so-odd, omega-odd, so-even, omega-even or pomega
    family: String,
    /// Rank: the matrices are 2n or 2n+1 square.
    n: u32,
    /// Field size, as a prime power (9) or p^f (3^2).
    q: String,
    /// Form type for even-dimensional families: + or -.
    #[arg(long, allow_hyphen_values = true)]
    eps: Option<String>,
    /// Single-line JSON output.
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct SpectrumArgs {
    #[command(flatten)]
    group: GroupArgs,
    /// Also list every element order.
    #[arg(long)]
    full: bool,
    /// Largest number of element orders --full may list.
    #[arg(long, default_value_t = 10_000)]
    cap: usize,
}

#[derive(ValueEnum, Debug, Clone, Copy)]
enum ModeArg {
    Auto,
    Exhaustive,
    Sample,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[command(flatten)]
    group: GroupArgs,
    #[arg(long, value_enum, default_value_t = ModeArg::Auto)]
    mode: ModeArg,
    #[arg(long, default_value_t = 10_000)]
    samples: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Largest group the exhaustive oracle may enumerate.
    #[arg(long, default_value_t = DEFAULT_CAP)]
    cap: usize,
}

#[derive(Args, Debug)]
struct WitnessArgs {
    #[command(flatten)]
    group: GroupArgs,
    /// Requested element order.
    #[arg(long)]
    order: String,
}

/// What a run printed and how it exits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            code: exit::OK,
            stdout,
            stderr: String::new(),
        }
    }

    fn fail(code: i32, msg: impl Into<String>) -> Self {
        Outcome {
            code,
            stdout: String::new(),
            stderr: msg.into(),
        }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::UnsupportedGroup(_) => exit::UNSUPPORTED,
        Error::InvalidArgument(_) | Error::InvalidEpsilon(_) => exit::PARSE,
        Error::CapExceeded { .. } => exit::CAP_EXCEEDED,
        Error::InfeasibleRecipe(_) | Error::InfeasibleOrder(_) => exit::INFEASIBLE,
        _ => exit::INTERNAL,
    }
}

fn from_error(e: Error) -> Outcome {
    Outcome::fail(exit_code(&e), format!("error: {e}\n"))
}

fn parse_q(s: &str) -> Result<u64, Error> {
    let bad = || Error::InvalidArgument(format!("cannot read field size {s:?}"));
    match s.split_once('^') {
        Some((p, f)) => {
            let p: u64 = p.trim().parse().map_err(|_| bad())?;
            let f: u32 = f.trim().parse().map_err(|_| bad())?;
            p.checked_pow(f).ok_or_else(bad)
        }
        None => s.trim().parse().map_err(|_| bad()),
    }
}

fn parse_eps(s: Option<&str>) -> Result<Epsilon, Error> {
    match s {
        None => Ok(Epsilon::None),
        Some("+" | "plus") => Ok(Epsilon::Plus),
        Some("-" | "minus") => Ok(Epsilon::Minus),
        Some(o) => Err(Error::InvalidEpsilon(format!("expected + or -, got {o:?}"))),
    }
}

fn parse_group(g: &GroupArgs) -> Result<NormalizedSpec, Error> {
    let family = Family::from_cli_name(&g.family)
        .ok_or_else(|| Error::InvalidArgument(format!("unknown family {:?}", g.family)))?;
    let spec = GroupSpec::new(family, g.n, parse_q(&g.q)?, parse_eps(g.eps.as_deref())?)?;
    normalize(&spec)
}

fn json_line<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string(v).expect("serializable");
    s.push('\n');
    s
}

fn strings(v: &[Nat]) -> Vec<String> {
    v.iter().map(Nat::to_string).collect()
}

#[derive(Serialize)]
struct GroupEcho {
    query: String,
    evaluated_as: String,
    engine: Engine,
    notes: Vec<String>,
}

impl GroupEcho {
    fn new(ns: &NormalizedSpec) -> Self {
        GroupEcho {
            query: ns.original.to_string(),
            evaluated_as: ns.spec.to_string(),
            engine: ns.engine,
            notes: ns.notes.clone(),
        }
    }
}

#[derive(Serialize)]
struct ProvenanceEntry {
    value: String,
    item: &'static str,
    detail: String,
}

#[derive(Serialize)]
struct QueryResult {
    group: GroupEcho,
    mu: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    omega: Option<Vec<String>>,
    provenance: Vec<ProvenanceEntry>,
    version: &'static str,
}

fn cmd_spectrum(a: &SpectrumArgs) -> Result<Outcome, Error> {
    let ns = parse_group(&a.group)?;
    let gens = omega_generators(&ns)?;
    let anti = mu(&gens);
    let omega = if a.full {
        Some(omega_from_antichain(&anti, a.cap)?)
    } else {
        None
    };
    let res = QueryResult {
        group: GroupEcho::new(&ns),
        mu: strings(&anti.values),
        omega: omega.as_deref().map(strings),
        provenance: gens
            .values
            .iter()
            .map(|g| ProvenanceEntry {
                value: g.value.to_string(),
                item: g.item,
                detail: g.detail.clone(),
            })
            .collect(),
        version: VERSION,
    };
    if a.group.json {
        return Ok(Outcome::ok(json_line(&res)));
    }
    let mut out = String::new();
    writeln!(out, "group   {}", res.group.query).unwrap();
    if res.group.evaluated_as != res.group.query {
        writeln!(out, "as      {}", res.group.evaluated_as).unwrap();
    }
    writeln!(out, "engine  {:?}", res.group.engine).unwrap();
    for n in &res.group.notes {
        writeln!(out, "note    {n}").unwrap();
    }
    writeln!(out, "mu      {}", res.mu.join(" ")).unwrap();
    if let Some(o) = &res.omega {
        writeln!(out, "omega   {}", o.join(" ")).unwrap();
    }
    writeln!(out, "sources").unwrap();
    for v in &anti.values {
        for g in gens.values.iter().filter(|g| &g.value == v) {
            writeln!(out, "  {:>8}  {} {}", g.value, g.item, g.detail).unwrap();
        }
    }
    Ok(Outcome::ok(out))
}

#[derive(Serialize)]
struct VerifyOutput<'a> {
    #[serde(flatten)]
    report: &'a VerifyReport,
    version: &'static str,
}

fn cmd_verify(a: &VerifyArgs) -> Result<Outcome, Error> {
    let ns = parse_group(&a.group)?;
    let opts = VerifyOptions {
        mode: match a.mode {
            ModeArg::Auto => Mode::Auto,
            ModeArg::Exhaustive => Mode::Exhaustive,
            ModeArg::Sample => Mode::Sample,
        },
        cap: a.cap,
        samples: a.samples,
        seed: a.seed,
    };
    let r = verify(&ns, &opts)?;
    let code = if r.verdict == Verdict::Violation {
        exit::VIOLATION
    } else {
        exit::OK
    };
    let stdout = if a.group.json {
        json_line(&VerifyOutput {
            report: &r,
            version: VERSION,
        })
    } else {
        let mut out = String::new();
        writeln!(out, "group        {}", r.group).unwrap();
        if r.oracle_group != r.group {
            writeln!(out, "oracle group {}", r.oracle_group).unwrap();
        }
        writeln!(out, "mode         {}", r.mode).unwrap();
        writeln!(out, "group size   {}", r.group_size).unwrap();
        writeln!(out, "formula mu   {}", r.formula_mu.join(" ")).unwrap();
        if let Some(obs) = &r.observed_max_orders {
            writeln!(out, "observed mu  {}", obs.join(" ")).unwrap();
        }
        if let Some(h) = &r.sampled_order_histogram {
            let cells: Vec<String> = h.iter().map(|c| format!("{}:{}", c.order, c.count)).collect();
            writeln!(out, "sampled      {}", cells.join(" ")).unwrap();
        }
        if let Some(rej) = r.rejected {
            writeln!(out, "rejected     {rej}").unwrap();
        }
        let verdict = serde_json::to_value(r.verdict).unwrap();
        writeln!(out, "verdict      {}", verdict.as_str().unwrap()).unwrap();
        if let Some(v) = &r.violation {
            if !v.unexplained_orders.is_empty() {
                writeln!(out, "unexplained  {}", v.unexplained_orders.join(" ")).unwrap();
            }
            if !v.unrealized_orders.is_empty() {
                writeln!(out, "unrealized   {}", v.unrealized_orders.join(" ")).unwrap();
            }
        }
        out
    };
    Ok(Outcome {
        code,
        stdout,
        stderr: String::new(),
    })
}

/// `x^2 + 2x + 2` style rendering of a polynomial over GF(p), lowest degree first.
fn poly_string(coeffs: &[FieldElem]) -> String {
    let mut terms = Vec::new();
    for (i, &c) in coeffs.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let coef = if c == 1 && i > 0 { String::new() } else { c.to_string() };
        terms.push(match i {
            0 => coef,
            1 => format!("{coef}x"),
            _ => format!("{coef}x^{i}"),
        });
    }
    terms.join(" + ")
}

#[derive(Serialize)]
struct FieldEcho {
    p: u32,
    f: u32,
    /// Monic modulus over GF(p), lowest degree first.
    modulus: Vec<FieldElem>,
}

#[derive(Serialize)]
struct WitnessOutput {
    group: GroupEcho,
    order: String,
    source: String,
    power: String,
    field: FieldEcho,
    matrix: Vec<Vec<FieldElem>>,
    version: &'static str,
}

fn field_echo(k: &FieldCtx) -> FieldEcho {
    FieldEcho {
        p: k.p(),
        f: k.f(),
        modulus: k.modulus().to_vec(),
    }
}

fn cmd_witness(a: &WitnessArgs) -> Result<Outcome, Error> {
    let ns = parse_group(&a.group)?;
    let m: Nat = a
        .order
        .trim()
        .parse()
        .map_err(|_| Error::InvalidArgument(format!("cannot read order {:?}", a.order)))?;
    if m == Nat::from(0u32) {
        return Err(Error::InvalidArgument("order must be positive".into()));
    }
    let w: Witness = witness_for_order(&ns, &m)?;
    let res = WitnessOutput {
        group: GroupEcho::new(&ns),
        order: w.order.to_string(),
        source: w.source.clone().unwrap_or_else(|| "identity".into()),
        power: w.power.to_string(),
        field: field_echo(&w.field),
        matrix: w.matrix.rows(),
        version: VERSION,
    };
    if a.group.json {
        return Ok(Outcome::ok(json_line(&res)));
    }
    let mut out = String::new();
    writeln!(out, "group   {}", w.group).unwrap();
    writeln!(out, "order   {}", res.order).unwrap();
    writeln!(out, "source  {} (power {})", res.source, res.power).unwrap();
    if w.field.f() == 1 {
        writeln!(out, "field   GF({})", w.field.p()).unwrap();
    } else {
        writeln!(
            out,
            "field   GF({}) = GF({})[x]/({}); entries are base-{} digit codes of polynomials in x",
            w.field.q(),
            w.field.p(),
            poly_string(w.field.modulus()),
            w.field.p()
        )
        .unwrap();
    }
    let width = res
        .matrix
        .iter()
        .flatten()
        .map(|v| v.to_string().len())
        .max()
        .unwrap_or(1);
    writeln!(out, "matrix").unwrap();
    for row in &res.matrix {
        let cells: Vec<String> = row.iter().map(|v| format!("{v:>width$}")).collect();
        writeln!(out, "  {}", cells.join(" ")).unwrap();
    }
    Ok(Outcome::ok(out))
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome::fail(exit::PARSE, text)
            } else {
                Outcome::ok(text)
            };
        }
    };
    let res = match &cli.command {
        Command::Spectrum(a) => cmd_spectrum(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Witness(a) => cmd_witness(a),
    };
    res.unwrap_or_else(from_error)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_sizes() {
        assert_eq!(parse_q("9").unwrap(), 9);
        assert_eq!(parse_q("3^2").unwrap(), 9);
        assert!(parse_q("x").is_err());
    }

    #[test]
    fn polynomials() {
        assert_eq!(poly_string(&[2, 2, 1]), "x^2 + 2x + 2");
        assert_eq!(poly_string(&[1, 1, 0, 1]), "x^3 + x + 1");
    }

    #[test]
    fn epsilon_words() {
        assert_eq!(parse_eps(Some("-")).unwrap(), Epsilon::Minus);
        assert_eq!(parse_eps(Some("plus")).unwrap(), Epsilon::Plus);
        assert!(parse_eps(Some("0")).is_err());
    }
}
