//! Command-line front end. `run` returns the exit code and captured output so
//! the binary stays a thin wrapper and the grammar is testable in-process.

use std::fmt::Write as _;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{format_rational, parse_rational, to_decimal, Poly3, Rational, Var};
use crate::appell::{appell_poly, make_family, AppellFamily, Normalization, FAMILY_NAMES};
use crate::determinant::{build_lghap_matrix, hess_det_counted, lghap_det, naive_det_counted};
use crate::error::{Error, Result};
use crate::lgh::{lghap_binomial, lghap_gf, lghap_series, LghParams};
use crate::operators::{exp_op_apply, lghap_by_operator, ode_residual_lghap, XAction};
use crate::special_cases::{oracle, reduce, ReductionCase, Table};

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Largest n for which `bench` also times the cofactor expansion.
pub const BENCH_NAIVE_MAX_N: usize = 6;

#[derive(Debug, Parser)]
#[command(name = "lghap", version, about = "Exact Laguerre-Gould Hopper based Appell polynomials")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the expanded polynomial.
    Expand {
        #[command(flatten)]
        poly: PolyArgs,
        #[arg(long, value_enum, default_value_t = Method::Series)]
        method: Method,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Evaluate exactly at a point.
    Eval {
        #[command(flatten)]
        poly: PolyArgs,
        /// x=<rat>,y=<rat>,z=<rat>; omitted variables are 0
        #[arg(long)]
        at: String,
    },
    /// Cross-check the construction methods against each other.
    Verify {
        /// Comma-separated family specs; repeatable
        #[arg(long, required = true)]
        families: Vec<String>,
        #[arg(long)]
        m: u32,
        #[arg(long)]
        r: u32,
        #[arg(long = "n-max")]
        n_max: usize,
        /// Comma-separated subset of series,binomial,gf,det,op,exp,ode
        #[arg(long, default_value = "series,binomial,gf,det,op,exp,ode")]
        methods: String,
        /// Comma-separated reduction cases, e.g. T1-IV,T2-V
        #[arg(long)]
        cases: Option<String>,
    },
    /// Emit a CSV grid of values over two swept variables.
    Grid {
        #[command(flatten)]
        poly: PolyArgs,
        /// <var>=<rat>; repeatable or comma-separated
        #[arg(long)]
        fix: Vec<String>,
        /// <var>=<from>:<to>:<steps>; exactly two
        #[arg(long)]
        sweep: Vec<String>,
        #[arg(long, default_value_t = 12)]
        digits: usize,
        /// Write the CSV here instead of standard output
        #[arg(long)]
        output: Option<std::path::PathBuf>,
    },
    /// List the supported families and their parameters.
    Families,
    /// Time the series, generating-function and determinant paths.
    Bench {
        #[arg(long)]
        family: String,
        #[arg(long)]
        m: u32,
        #[arg(long)]
        r: u32,
        #[arg(long = "n-max")]
        n_max: usize,
    },
}

#[derive(Debug, Args)]
struct PolyArgs {
    #[arg(long)]
    family: String,
    #[arg(long)]
    m: u32,
    #[arg(long)]
    r: u32,
    #[arg(long)]
    n: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Series,
    Binomial,
    Gf,
    Det,
    Op,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Debug, Default, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { code: EXIT_OK, stdout, stderr: String::new() }
    }

    fn usage(err: impl std::fmt::Display) -> Self {
        Outcome { code: EXIT_USAGE, stdout: String::new(), stderr: format!("error: {err}\n") }
    }
}

/// Parses `argv` (including the program name) and runs the subcommand.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code: EXIT_USAGE, stdout: String::new(), stderr: text }
            } else {
                Outcome::ok(text)
            };
        }
    };
    let result = match cli.command {
        Command::Expand { poly, method, format } => cmd_expand(&poly, method, format),
        Command::Eval { poly, at } => cmd_eval(&poly, &at),
        Command::Verify { families, m, r, n_max, methods, cases } => {
            return cmd_verify(&families, m, r, n_max, &methods, cases.as_deref())
                .unwrap_or_else(Outcome::usage)
        }
        Command::Grid { poly, fix, sweep, digits, output } => {
            cmd_grid(&poly, &fix, &sweep, digits).and_then(|csv| match output {
                Some(path) => std::fs::write(&path, csv)
                    .map(|_| String::new())
                    .map_err(|e| Error::InvalidParameter(format!("{}: {e}", path.display()))),
                None => Ok(csv),
            })
        }
        Command::Families => Ok(cmd_families()),
        Command::Bench { family, m, r, n_max } => cmd_bench(&family, m, r, n_max),
    };
    match result {
        Ok(stdout) => Outcome::ok(stdout),
        Err(e) => Outcome::usage(e),
    }
}

/// Computes the polynomial with the chosen construction.
pub fn expand_with(f: &AppellFamily, p: LghParams, n: usize, method: Method) -> Result<Poly3> {
    match method {
        Method::Series => Ok(lghap_series(f, p, n)),
        Method::Binomial => lghap_binomial(f, p, n),
        Method::Gf => lghap_gf(f, p, n),
        Method::Det => lghap_det(f, p, n),
        Method::Op => lghap_by_operator(f, p, n),
    }
}

fn resolve(poly: &PolyArgs) -> Result<(AppellFamily, LghParams)> {
    Ok((make_family(&poly.family)?, LghParams::new(poly.m, poly.r)?))
}

#[derive(Serialize)]
struct JsonTerm {
    x: u32,
    y: u32,
    z: u32,
    coeff: String,
}

#[derive(Serialize)]
struct JsonPoly<'a> {
    family: &'a str,
    m: u32,
    r: u32,
    n: usize,
    terms: Vec<JsonTerm>,
}

pub fn poly_to_json(family: &AppellFamily, p: LghParams, n: usize, poly: &Poly3) -> String {
    let doc = JsonPoly {
        family: family.name(),
        m: p.m,
        r: p.r,
        n,
        terms: poly
            .terms()
            .map(|(mono, c)| JsonTerm {
                x: mono.exp(Var::X),
                y: mono.exp(Var::Y),
                z: mono.exp(Var::Z),
                coeff: format_rational(c),
            })
            .collect(),
    };
    serde_json::to_string(&doc).expect("plain data serializes")
}

fn cmd_expand(poly: &PolyArgs, method: Method, format: Format) -> Result<String> {
    let (f, p) = resolve(poly)?;
    let value = expand_with(&f, p, poly.n, method)?;
    Ok(match format {
        Format::Text => format!("{value}\n"),
        Format::Json => format!("{}\n", poly_to_json(&f, p, poly.n, &value)),
    })
}

fn parse_assignment(text: &str) -> Result<(Var, &str)> {
    let (name, value) = text
        .split_once('=')
        .ok_or_else(|| Error::Parse(format!("`{text}` is not <var>=<value>")))?;
    let var = Var::parse(name.trim())
        .ok_or_else(|| Error::Parse(format!("unknown variable `{}` (expected x, y or z)", name.trim())))?;
    Ok((var, value.trim()))
}

/// `x=1/2,y=-3`; omitted variables are 0, repeats are rejected.
pub fn parse_point(text: &str) -> Result<[Rational; 3]> {
    let mut point: [Option<Rational>; 3] = [None, None, None];
    for part in text.split(',').filter(|s| !s.trim().is_empty()) {
        let (var, value) = parse_assignment(part)?;
        let slot = &mut point[var as usize];
        if slot.is_some() {
            return Err(Error::Parse(format!("{var} assigned twice")));
        }
        *slot = Some(parse_rational(value)?);
    }
    Ok(point.map(|v| v.unwrap_or_else(zero)))
}

fn zero() -> Rational {
    Rational::from_integer(0.into())
}

fn cmd_eval(poly: &PolyArgs, at: &str) -> Result<String> {
    let (f, p) = resolve(poly)?;
    let [x, y, z] = parse_point(at)?;
    let value = lghap_series(&f, p, poly.n).eval(&x, &y, &z);
    Ok(format!("{}\n", format_rational(&value)))
}

/// Two swept variables and fixed values for the rest.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridSpec {
    pub fixed: Vec<(Var, Rational)>,
    pub sweeps: [Sweep; 2],
    pub digits: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sweep {
    pub var: Var,
    pub from: Rational,
    pub to: Rational,
    pub steps: usize,
}

impl Sweep {
    pub fn parse(text: &str) -> Result<Sweep> {
        let bad = |why: &str| Error::InvalidGrid(format!("sweep `{text}`: {why}"));
        let (var, range) = parse_assignment(text).map_err(|e| bad(&e.to_string()))?;
        let parts: Vec<&str> = range.split(':').collect();
        let [from, to, steps] = parts[..] else {
            return Err(bad("expected <var>=<from>:<to>:<steps>"));
        };
        let from = parse_rational(from).map_err(|e| bad(&e.to_string()))?;
        let to = parse_rational(to).map_err(|e| bad(&e.to_string()))?;
        let steps: usize = steps.trim().parse().map_err(|_| bad("steps must be a positive integer"))?;
        if steps < 2 {
            return Err(bad("steps must be >= 2"));
        }
        if from == to {
            return Err(bad("from and to must differ"));
        }
        Ok(Sweep { var, from, to, steps })
    }

    pub fn nodes(&self) -> Vec<Rational> {
        let width = (&self.to - &self.from) / Rational::from_integer((self.steps - 1).into());
        (0..self.steps)
            .map(|i| &self.from + &width * Rational::from_integer(i.into()))
            .collect()
    }
}

impl GridSpec {
    pub fn parse(fix: &[String], sweep: &[String], digits: usize) -> Result<GridSpec> {
        let sweeps: Vec<Sweep> = sweep.iter().map(|s| Sweep::parse(s)).collect::<Result<_>>()?;
        let Ok(sweeps) = <[Sweep; 2]>::try_from(sweeps) else {
            return Err(Error::InvalidGrid(format!("exactly two --sweep options are required (got {})", sweep.len())));
        };
        if sweeps[0].var == sweeps[1].var {
            return Err(Error::InvalidGrid(format!("{} is swept twice", sweeps[0].var)));
        }
        let mut fixed: Vec<(Var, Rational)> = Vec::new();
        for part in fix.iter().flat_map(|s| s.split(',')).filter(|s| !s.trim().is_empty()) {
            let (var, value) = parse_assignment(part).map_err(|e| Error::InvalidGrid(e.to_string()))?;
            if sweeps.iter().any(|s| s.var == var) || fixed.iter().any(|(v, _)| *v == var) {
                return Err(Error::InvalidGrid(format!("{var} is assigned more than once")));
            }
            fixed.push((var, parse_rational(value).map_err(|e| Error::InvalidGrid(e.to_string()))?));
        }
        Ok(GridSpec { fixed, sweeps, digits })
    }
}

/// CSV `<var1>,<var2>,value`, first sweep outermost, exact values rounded half-even.
pub fn grid_csv(poly: &Poly3, spec: &GridSpec) -> String {
    let mut point: [Rational; 3] = std::array::from_fn(|_| zero());
    for (var, value) in &spec.fixed {
        point[*var as usize] = value.clone();
    }
    let [a, b] = &spec.sweeps;
    let mut out = format!("{},{},value\n", a.var, b.var);
    let b_nodes = b.nodes();
    for u in a.nodes() {
        for v in &b_nodes {
            point[a.var as usize] = u.clone();
            point[b.var as usize] = v.clone();
            let value = poly.eval(&point[0], &point[1], &point[2]);
            let _ = writeln!(
                out,
                "{},{},{}",
                to_decimal(&u, spec.digits),
                to_decimal(v, spec.digits),
                to_decimal(&value, spec.digits)
            );
        }
    }
    out
}

fn cmd_grid(poly: &PolyArgs, fix: &[String], sweep: &[String], digits: usize) -> Result<String> {
    let spec = GridSpec::parse(fix, sweep, digits)?;
    let (f, p) = resolve(poly)?;
    Ok(grid_csv(&lghap_series(&f, p, poly.n), &spec))
}

fn cmd_families() -> String {
    let rows = [
        ("bernoulli", "", "t/(e^t-1)"),
        ("euler", "", "2/(e^t+1)"),
        ("genocchi", "", "2t/(e^t+1)"),
        ("gen-bernoulli", "alpha", "(t/(e^t-1))^alpha"),
        ("gen-euler", "alpha", "(2/(e^t+1))^alpha"),
        ("apostol-bernoulli", "alpha,lambda", "(t/(lambda e^t-1))^alpha"),
        ("apostol-euler", "alpha,lambda", "(2/(lambda e^t+1))^alpha"),
        ("miller-lee", "s", "1/(1-t)^(s+1), ordinary"),
        ("trunc-exp", "", "1/(1-t), ordinary"),
        ("modified-laguerre", "beta", "1/(1-t)^beta, ordinary"),
    ];
    debug_assert_eq!(rows.len(), FAMILY_NAMES.len());
    let mut out = String::new();
    for (name, params, gf) in rows {
        let params = if params.is_empty() { "-" } else { params };
        let _ = writeln!(out, "{name:<18} {params:<13} {gf}");
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Check {
    Series,
    Binomial,
    Gf,
    Det,
    Op,
    Exp,
    Ode,
}

const CHECKS: [(Check, &str); 7] = [
    (Check::Series, "series"),
    (Check::Binomial, "binomial"),
    (Check::Gf, "gf"),
    (Check::Det, "det"),
    (Check::Op, "op"),
    (Check::Exp, "exp"),
    (Check::Ode, "ode"),
];

fn parse_checks(text: &str) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for name in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (check, _) = CHECKS
            .iter()
            .find(|(_, n)| *n == name)
            .ok_or_else(|| Error::Parse(format!("unknown method `{name}`")))?;
        if !out.contains(check) {
            out.push(*check);
        }
    }
    if out.is_empty() {
        return Err(Error::Parse("no methods selected".into()));
    }
    out.sort();
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Verdict {
    Ok,
    Mismatch,
    NotApplicable,
}

impl Verdict {
    fn label(self) -> &'static str {
        match self {
            Verdict::Ok => "ok",
            Verdict::Mismatch => "FAIL",
            Verdict::NotApplicable => "n/a",
        }
    }
}

fn verdict(result: Result<bool>) -> Verdict {
    match result {
        Ok(true) => Verdict::Ok,
        Ok(false) => Verdict::Mismatch,
        Err(_) => Verdict::NotApplicable,
    }
}

fn check_cell(f: &AppellFamily, p: LghParams, n: usize, check: Check, reference: &Poly3) -> Verdict {
    let same = |v: Result<Poly3>| v.map(|v| &v == reference);
    match check {
        Check::Series => Verdict::Ok,
        Check::Binomial => verdict(same(lghap_binomial(f, p, n))),
        Check::Gf => verdict(same(lghap_gf(f, p, n))),
        Check::Det => verdict(same(lghap_det(f, p, n))),
        Check::Op => verdict(same(lghap_by_operator(f, p, n))),
        Check::Exp => verdict(same(appell_poly(f, n).map(|a| {
            exp_op_apply(XAction::InvDeriveX, p.m, &exp_op_apply(XAction::MulZ, p.r, &a))
        }))),
        Check::Ode => verdict(ode_residual_lghap(f, p, n, reference).map(|res| res.is_zero())),
    }
}

fn cmd_verify(
    families: &[String],
    m: u32,
    r: u32,
    n_max: usize,
    methods: &str,
    cases: Option<&str>,
) -> Result<Outcome> {
    let p = LghParams::new(m, r)?;
    let checks = parse_checks(methods)?;
    let fams: Vec<AppellFamily> = families
        .iter()
        .flat_map(|s| split_family_list(s))
        .map(|s| make_family(&s))
        .collect::<Result<_>>()?;
    if fams.is_empty() {
        return Err(Error::InvalidParameter("no families given".into()));
    }
    let cases: Vec<ReductionCase> = match cases {
        Some(list) => list
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(str::parse)
            .collect::<Result<_>>()?,
        None => Vec::new(),
    };

    let cells: Vec<(usize, usize)> = (0..fams.len()).flat_map(|i| (0..=n_max).map(move |n| (i, n))).collect();
    let rows: Vec<Vec<Verdict>> = cells
        .par_iter()
        .map(|&(i, n)| {
            let reference = lghap_series(&fams[i], p, n);
            checks.iter().map(|&c| check_cell(&fams[i], p, n, c, &reference)).collect()
        })
        .collect();

    let mut out = String::new();
    let mut failures = 0usize;
    let name_width = fams.iter().map(|f| f.name().len()).max().unwrap_or(6).max(6);
    let _ = write!(out, "{:<name_width$} {:>3}", "family", "n");
    for c in &checks {
        let _ = write!(out, " {:>8}", CHECKS.iter().find(|(k, _)| k == c).map(|(_, n)| *n).unwrap_or(""));
    }
    out.push('\n');
    for (&(i, n), row) in cells.iter().zip(&rows) {
        let _ = write!(out, "{:<name_width$} {n:>3}", fams[i].name());
        for v in row {
            failures += usize::from(*v == Verdict::Mismatch);
            let _ = write!(out, " {:>8}", v.label());
        }
        out.push('\n');
    }

    let case_lines: Vec<(String, bool)> = cases
        .par_iter()
        .flat_map_iter(|case| {
            let targets: Vec<Option<&AppellFamily>> = match case.table {
                Table::T1 => vec![None],
                Table::T2 => fams.iter().map(Some).collect(),
            };
            targets.into_iter().map(move |f| verify_case(case, m, r, n_max, f))
        })
        .collect();
    for (line, ok) in &case_lines {
        failures += usize::from(!ok);
        out.push_str(line);
        out.push('\n');
    }
    let _ = writeln!(
        out,
        "{} cells, {} methods, {} cases: {}",
        cells.len(),
        checks.len(),
        case_lines.len(),
        if failures == 0 { "all agree".to_string() } else { format!("{failures} mismatches") }
    );
    Ok(Outcome {
        code: if failures == 0 { EXIT_OK } else { EXIT_MISMATCH },
        stdout: out,
        stderr: String::new(),
    })
}

/// `--families a,b` splits on commas that start a new family name, so
/// `apostol-euler:alpha=1,lambda=2,bernoulli` keeps its parameters.
pub fn split_family_list(text: &str) -> Vec<String> {
    let mut out: Vec<String> = Vec::new();
    for piece in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let starts_family = FAMILY_NAMES
            .iter()
            .any(|name| piece == *name || piece.starts_with(&format!("{name}:")));
        match out.last_mut() {
            Some(last) if !starts_family => {
                last.push(',');
                last.push_str(piece);
            }
            _ => out.push(piece.to_string()),
        }
    }
    out
}

fn verify_case(case: &ReductionCase, m: u32, r: u32, n_max: usize, f: Option<&AppellFamily>) -> (String, bool) {
    let label = match f {
        Some(f) => format!("{case} {}", f.name()),
        None => case.to_string(),
    };
    let p = match case.params(m, r) {
        Ok(p) => p,
        Err(e) => return (format!("{label}: {e}"), !matches!(e, Error::ConstraintViolation(_))),
    };
    let mut status = "ok".to_string();
    let mut ok = true;
    for n in 0..=n_max {
        match (reduce(case, p, n, f), oracle(case, p, n, f)) {
            (Ok(a), Ok(b)) if a == b => {}
            (Ok(_), Ok(_)) => {
                status = format!("FAIL at n={n}");
                ok = false;
                break;
            }
            (Err(e), _) | (_, Err(e)) => {
                ok = matches!(e, Error::UnsupportedCase(_) | Error::NormalizationMismatch(_) | Error::DegenerateFamily(_));
                status = format!("n/a ({e})");
                break;
            }
        }
    }
    (format!("{label} m={} r={} n=0..{n_max}: {status}", p.m, p.r), ok)
}

fn micros(start: Instant) -> u128 {
    start.elapsed().as_micros()
}

fn cmd_bench(family: &str, m: u32, r: u32, n_max: usize) -> Result<String> {
    let f = make_family(family)?;
    let p = LghParams::new(m, r)?;
    if f.normalization() != Normalization::Egf {
        return Err(Error::NormalizationMismatch(format!("bench needs an exponential family, got {}", f.name())));
    }
    let mut out = String::from(
        "n,series_us,gf_us,hess_us,hess_products,naive_us,naive_products\n",
    );
    for n in 0..=n_max {
        let t = Instant::now();
        let series = lghap_series(&f, p, n);
        let series_us = micros(t);
        let t = Instant::now();
        let gf = lghap_gf(&f, p, n)?;
        let gf_us = micros(t);
        debug_assert_eq!(series, gf);
        let (hess_us, hess_products, naive) = match build_lghap_matrix(&f, p, n) {
            Ok(mat) => {
                let t = Instant::now();
                let (_, stats) = hess_det_counted(&mat);
                let hess_us = micros(t);
                let naive = if n <= BENCH_NAIVE_MAX_N {
                    let t = Instant::now();
                    let (_, ns) = naive_det_counted(&mat)?;
                    format!("{},{}", micros(t), ns.entry_products)
                } else {
                    "-,-".to_string()
                };
                (hess_us.to_string(), stats.entry_products.to_string(), naive)
            }
            Err(Error::DegenerateFamily(_)) => ("-".into(), "-".into(), "-,-".into()),
            Err(e) => return Err(e),
        };
        let _ = writeln!(out, "{n},{series_us},{gf_us},{hess_us},{hess_products},{naive}");
    }
    Ok(out)
}
