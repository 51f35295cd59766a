//! Command-line front end: coefficient dumps, constants, radial expansions,
//! coefficient asymptotics, error profiles and case-study reports.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hybrid_asym::cases::{self, constants, CaseConfig, CaseStudyReport, ConstantRecord};
use hybrid_asym::exact::{self, factorial_scaled, plane_tree_series, product_expand, q_alpha_float, FactorGenerator};
use hybrid_asym::logpower::{AsymTermRecord, Exponent};
use hybrid_asym::numerics::{format_fixed, format_sci, Precision, RootOfUnity};
use hybrid_asym::pipeline::{assemble_with, error_profile, exp_log_decompose, q_alpha_spec, radial_expansion, GfSpec, Scaling};
use hybrid_asym::Exec;
use rug::{Float, Integer, Rational};
use serde::Serialize;

/// Digits used for CSV columns of `compare`, independent of --prec.
pub const CSV_DIGITS: usize = 30;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Numeric(#[from] hybrid_asym::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Io(_) => 3,
            CliError::Numeric(hybrid_asym::Error::ConstantMismatch { .. }) => 4,
            CliError::Numeric(hybrid_asym::Error::InvalidArgument(_)) => 2,
            CliError::Numeric(_) => 1,
        }
    }
}

type Result<T> = std::result::Result<T, CliError>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "hybrid-asym", version, about = "Asymptotics of infinite-product generating functions")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

/// Flags shared by every verb.
#[derive(Debug, Clone, Args)]
pub struct Common {
    /// Working precision in decimal digits.
    #[arg(long, env = "HYBRID_ASYM_PREC", default_value_t = 50, value_parser = clap::value_parser!(u32).range(20..=2000))]
    pub prec: u32,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Write to a file instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Evaluate on one thread.
    #[arg(long)]
    pub sequential: bool,
}

impl Common {
    fn precision(&self) -> Precision {
        Precision::new(self.prec)
    }

    fn exec(&self) -> Exec {
        if self.sequential {
            Exec::Sequential
        } else {
            Exec::Parallel
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Exact Taylor coefficients of a registered family.
    Coeffs {
        gf: String,
        #[arg(long, default_value_t = 20, value_parser = clap::value_parser!(u64).range(0..=4096))]
        n_max: u64,
        /// Floating point instead of exact rationals.
        #[arg(long)]
        float: bool,
        #[command(flatten)]
        common: Common,
    },
    /// A named constant, computed along two routes.
    Constants {
        /// eG, c2, W1, K, kappa, exp-neg-gamma, f-omega, c3, Q-2, B:m, varpi:m, delta:q, delta-hat:q, or "list"
        name: String,
        /// Significant digits shown in text output (default: --prec).
        #[arg(long)]
        digits: Option<usize>,
        #[command(flatten)]
        common: Common,
    },
    /// Exact coefficients against the assembled expansion, one row per n.
    Compare {
        gf: String,
        #[arg(long, default_value_t = 1000, value_parser = clap::value_parser!(u64).range(1..=4096))]
        n_max: u64,
        #[arg(long, default_value_t = 1)]
        n_min: u64,
        /// Keep terms up to n^{-depth}.
        #[arg(long, default_value = "3")]
        depth: Exponent,
        /// Include roots of unity of order ≤ roots.
        #[arg(long, default_value_t = 1)]
        roots: u64,
        /// none, n3, n4log3, …: residual is (exact/approx − 1)·n^a/log^b n.
        #[arg(long, default_value = "none")]
        scaling: Scaling,
        #[command(flatten)]
        common: Common,
    },
    /// Radial expansion at a root of unity, as a log-power series.
    Expand {
        gf: String,
        /// Root as "ℓ/j", meaning e^{2iπj/ℓ}.
        #[arg(long, default_value = "1/0")]
        root: String,
        /// Error order t in O((1 − z/ζ)^t).
        #[arg(long, default_value = "1")]
        order: Exponent,
        #[command(flatten)]
        common: Common,
    },
    /// Full asymptotic expansion of the coefficients.
    Asym {
        gf: String,
        #[arg(long, default_value = "3")]
        depth: Exponent,
        #[arg(long, default_value_t = 3)]
        roots: u64,
        #[command(flatten)]
        common: Common,
    },
    /// Case-study report as JSON.
    Report {
        /// distinct-cycles, square-perms, mth-roots:m, same-cycle-type, ddf:q, forests, q-alpha:α
        case: String,
        #[arg(long, default_value_t = 200, value_parser = clap::value_parser!(u64).range(1..=4096))]
        n_max: u64,
        #[arg(long, default_value = "3")]
        depth: Exponent,
        #[arg(long, default_value_t = 3)]
        roots: u64,
        #[arg(long, default_value = "none")]
        scaling: Scaling,
        #[arg(long, default_value_t = 10)]
        prefix_len: usize,
        #[command(flatten)]
        common: Common,
    },
}

impl Command {
    fn common(&self) -> &Common {
        match self {
            Command::Coeffs { common, .. }
            | Command::Constants { common, .. }
            | Command::Compare { common, .. }
            | Command::Expand { common, .. }
            | Command::Asym { common, .. }
            | Command::Report { common, .. } => common,
        }
    }
}

/// A registered family, as far as coefficients go.
enum Family {
    Exact(FactorGenerator),
    Float(FactorGenerator<Float>),
    Trees,
}

fn parse_param<T: std::str::FromStr>(name: &str, s: &str) -> Result<T> {
    s.parse().map_err(|_| CliError::Usage(format!("bad parameter in {name:?}")))
}

fn family(name: &str, p: Precision) -> Result<Family> {
    let lib = |r: hybrid_asym::Result<FactorGenerator>| r.map(Family::Exact).map_err(|e| CliError::Usage(e.to_string()));
    Ok(match name {
        "distinct-cycles" => Family::Exact(exact::distinct_cycles()),
        "square-perms" => Family::Exact(exact::square_permutations()),
        "same-cycle-type" => Family::Exact(exact::same_cycle_type()),
        "forests:E" => Family::Exact(exact::dissimilar_forests()),
        "forests:F" => Family::Exact(exact::all_forests()),
        "forests:T" => Family::Trees,
        _ => {
            if let Some(m) = name.strip_prefix("mth-roots:") {
                lib(exact::mth_root(parse_param(name, m)?))?
            } else if let Some(q) = name.strip_prefix("ddf-hat:") {
                lib(exact::distinct_degree_hat(parse_param(name, q)?))?
            } else if let Some(q) = name.strip_prefix("ddf:") {
                lib(exact::distinct_degree(parse_param(name, q)?))?
            } else if let Some(a) = name.strip_prefix("q-alpha:") {
                let alpha: Rational = parse_param(name, a)?;
                if *alpha.denom() == 1 {
                    let a = alpha.numer().to_i64().ok_or_else(|| CliError::Usage("α out of range".into()))?;
                    Family::Exact(exact::q_alpha_integer(a))
                } else {
                    Family::Float(q_alpha_float(&alpha, p.raised(30).bits()))
                }
            } else {
                return Err(CliError::Usage(format!("unknown generating function {name:?}")));
            }
        }
    })
}

/// Power of n! the coefficients are scaled by when printed.
fn factorial_power(name: &str) -> u32 {
    match name {
        "distinct-cycles" | "square-perms" => 1,
        "same-cycle-type" => 2,
        _ if name.starts_with("mth-roots:") => 1,
        _ => 0,
    }
}

fn spec_for(name: &str, p: Precision) -> Result<GfSpec> {
    match family(name, p)? {
        Family::Exact(g) => exp_log_decompose(&g, p).map_err(|e| match e {
            hybrid_asym::Error::InvalidArgument(m) => CliError::Usage(m),
            e => e.into(),
        }),
        Family::Float(_) => {
            let a: Rational = parse_param(name, name.trim_start_matches("q-alpha:"))?;
            Ok(q_alpha_spec(&a, p)?)
        }
        Family::Trees => Err(CliError::Usage(format!("{name} has no unit-circle expansion"))),
    }
}

/// Exact coefficients 0..=n_max as rationals (floats converted exactly).
fn rational_coefficients(name: &str, n_max: usize, p: Precision) -> Result<Vec<Rational>> {
    Ok(match family(name, p)? {
        Family::Exact(g) => product_expand(&g, n_max).into_coeffs(),
        Family::Float(g) => product_expand(&g, n_max)
            .coeffs()
            .iter()
            .map(|c| c.to_rational().unwrap_or_default())
            .collect(),
        Family::Trees => plane_tree_series(n_max).into_coeffs(),
    })
}

fn render_rational(q: &Rational) -> String {
    if *q.denom() == 1 {
        q.numer().to_string()
    } else {
        q.to_string()
    }
}

fn csv_escape(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

#[derive(Serialize)]
struct CoeffRow {
    n: u64,
    value: String,
}

fn cmd_coeffs(gf: &str, n_max: usize, float: bool, c: &Common) -> Result<String> {
    let p = c.precision();
    let mut vals = rational_coefficients(gf, n_max, p)?;
    let power = factorial_power(gf);
    let label = match power {
        0 => "coefficient".to_string(),
        1 => "n!*coefficient".to_string(),
        k => format!("n!^{k}*coefficient"),
    };
    if power > 0 {
        vals = factorial_scaled(&exact::ExactSeries::from_coeffs(vals), power);
    }
    let inexact = matches!(family(gf, p)?, Family::Float(_));
    let rows: Vec<CoeffRow> = vals
        .iter()
        .enumerate()
        .map(|(n, v)| CoeffRow {
            n: n as u64,
            value: if float || inexact {
                format_sci(&Float::with_val(p.bits(), v), p.digits() as usize)
            } else {
                render_rational(v)
            },
        })
        .collect();
    Ok(match c.format.unwrap_or(Format::Csv) {
        Format::Json => json(&serde_json::json!({ "gf": gf, "column": label, "rows": rows })),
        Format::Csv | Format::Text => {
            let mut out = format!("n,{label}\n");
            for r in rows {
                writeln!(out, "{},{}", r.n, r.value).unwrap();
            }
            out
        }
    })
}

fn cmd_constants(name: &str, digits: Option<usize>, c: &Common) -> Result<String> {
    if name == "list" {
        return Ok(constants::NAMES.iter().map(|n| format!("{n}\n")).collect());
    }
    let records: Vec<ConstantRecord> = constants::by_name(name, c.precision()).map_err(|e| match e {
        hybrid_asym::Error::InvalidArgument(m) => CliError::Usage(m),
        e => e.into(),
    })?;
    Ok(match c.format.unwrap_or(Format::Text) {
        Format::Json => json(&records),
        Format::Csv => {
            let mut out = "name,value,route_a,value_a,route_b,value_b,delta\n".to_string();
            for r in &records {
                let cols = [&r.name, &r.value, &r.route_a, &r.value_a, &r.route_b, &r.value_b, &r.delta];
                let line: Vec<String> = cols.iter().map(|s| csv_escape(s)).collect();
                writeln!(out, "{}", line.join(",")).unwrap();
            }
            out
        }
        Format::Text => {
            let d = digits.unwrap_or(c.prec as usize);
            let mut out = String::new();
            for r in &records {
                let v = Float::with_val(c.precision().raised(10).bits(), Float::parse(&r.value).expect("rendered float"));
                writeln!(out, "{}", format_fixed(&v, d)).unwrap();
            }
            out
        }
    })
}

#[allow(clippy::too_many_arguments)]
fn cmd_compare(gf: &str, n_min: u64, n_max: u64, depth: Exponent, roots: u64, scaling: Scaling, c: &Common) -> Result<String> {
    if n_min < 1 || n_min > n_max {
        return Err(CliError::Usage(format!("need 1 ≤ n-min ≤ n-max, got {n_min}..{n_max}")));
    }
    let p = c.precision();
    let spec = spec_for(gf, p)?;
    let raw = rational_coefficients(gf, n_max as usize, p)?;
    // the spec describes the product at z·z_scale
    let mut scale = Rational::from(1);
    let exact: Vec<Rational> = raw
        .into_iter()
        .map(|v| {
            let out = v * &scale;
            scale *= &spec.z_scale;
            out
        })
        .collect();
    let e = assemble_with(&spec, roots, depth, p, c.exec())?;
    let rows = error_profile(&exact, &e, n_min..=n_max, scaling, p, c.exec());
    Ok(match c.format.unwrap_or(Format::Csv) {
        Format::Json => {
            let rows: Vec<cases::ProfileRecord> = rows
                .iter()
                .map(|r| cases::ProfileRecord {
                    n: r.n,
                    exact: format_sci(&r.exact, CSV_DIGITS),
                    approx: format_sci(&r.approx, CSV_DIGITS),
                    scaled: format_sci(&r.scaled, CSV_DIGITS),
                })
                .collect();
            json(&rows)
        }
        Format::Csv | Format::Text => {
            let mut out = "n,exact,approx,scaled_residual\n".to_string();
            for r in rows {
                writeln!(
                    out,
                    "{},{},{},{}",
                    r.n,
                    format_sci(&r.exact, CSV_DIGITS),
                    format_sci(&r.approx, CSV_DIGITS),
                    format_sci(&r.scaled, CSV_DIGITS)
                )
                .unwrap();
            }
            out
        }
    })
}

#[derive(Serialize)]
struct SeriesTerm {
    alpha: Exponent,
    log_power: u32,
    re: String,
    im: String,
}

fn cmd_expand(gf: &str, root: &str, order: Exponent, c: &Common) -> Result<String> {
    let p = c.precision();
    let zeta = RootOfUnity::parse(root).ok_or_else(|| CliError::Usage(format!("root must be \"ℓ/j\", got {root:?}")))?;
    let spec = spec_for(gf, p)?;
    let s = radial_expansion(&spec, zeta, order, p)?;
    let digits = p.digits() as usize;
    let terms: Vec<SeriesTerm> = s
        .terms()
        .map(|(a, k, v)| SeriesTerm {
            alpha: a,
            log_power: k,
            re: format_sci(&v.re, digits),
            im: format_sci(&v.im, digits),
        })
        .collect();
    Ok(match c.format.unwrap_or(Format::Text) {
        Format::Json => json(&serde_json::json!({
            "gf": gf,
            "root": zeta.to_string(),
            "order": order,
            "terms": terms,
        })),
        Format::Csv => {
            let mut out = "alpha,log_power,re,im\n".to_string();
            for t in &terms {
                writeln!(out, "{},{},{},{}", t.alpha, t.log_power, t.re, t.im).unwrap();
            }
            out
        }
        Format::Text => {
            let mut out = format!("{gf} at root {zeta} (ℓ/j: ζ = e^(2iπj/ℓ)), X = 1 − z/ζ, Λ = log(1/X)\n");
            for t in &terms {
                let mut mono = format!("X^{}", t.alpha);
                if t.log_power > 0 {
                    write!(mono, "·Λ^{}", t.log_power).unwrap();
                }
                writeln!(out, "  ({})·{}", complex_text(&t.re, &t.im), mono).unwrap();
            }
            writeln!(out, "  + O(X^{order})").unwrap();
            out
        }
    })
}

fn complex_text(re: &str, im: &str) -> String {
    match im.strip_prefix('-') {
        Some(m) => format!("{re} − {m}i"),
        None => format!("{re} + {im}i"),
    }
}

fn cmd_asym(gf: &str, depth: Exponent, roots: u64, c: &Common) -> Result<String> {
    let p = c.precision();
    let spec = spec_for(gf, p)?;
    let e = assemble_with(&spec, roots, depth, p, c.exec())?;
    let records: Vec<AsymTermRecord> = e.records(p.digits() as usize);
    Ok(match c.format.unwrap_or(Format::Text) {
        Format::Json => json(&records),
        Format::Csv => {
            let mut out = "root,beta,log_power,re,im\n".to_string();
            for r in &records {
                writeln!(out, "{},{},{},{},{}", r.root, r.beta, r.log_power, r.re, r.im).unwrap();
            }
            out
        }
        Format::Text => {
            let mut out = format!("[z^n] {gf} ~ Σ amp·ζ^(−n)·n^(−β)·(log n)^j\n");
            for r in &records {
                writeln!(out, "  ζ = {:<5} β = {:<6} j = {}  {}", r.root, r.beta.to_string(), r.log_power, complex_text(&r.re, &r.im)).unwrap();
            }
            out
        }
    })
}

fn case_report(case: &str, cfg: &CaseConfig) -> Result<CaseStudyReport> {
    let r = match case {
        "distinct-cycles" => cases::distinct_cycles(cfg),
        "square-perms" => cases::square_permutations(cfg),
        "same-cycle-type" => cases::same_cycle_type(cfg),
        "forests" => cases::dissimilar_forests(cfg),
        _ => {
            if let Some(m) = case.strip_prefix("mth-roots:") {
                cases::mth_root_permutations(parse_param(case, m)?, cfg)
            } else if let Some(q) = case.strip_prefix("ddf:") {
                cases::distinct_degree_factorization(parse_param(case, q)?, cfg)
            } else if let Some(a) = case.strip_prefix("q-alpha:") {
                cases::q_alpha_products(&parse_param(case, a)?, cfg)
            } else {
                return Err(CliError::Usage(format!("unknown case study {case:?}")));
            }
        }
    };
    r.map_err(|e| match e {
        hybrid_asym::Error::InvalidArgument(m) => CliError::Usage(m),
        e => e.into(),
    })
}

/// Runs one command and returns what it would print.
pub fn render(cmd: &Command) -> Result<String> {
    match cmd {
        Command::Coeffs { gf, n_max, float, common } => cmd_coeffs(gf, *n_max as usize, *float, common),
        Command::Constants { name, digits, common } => cmd_constants(name, *digits, common),
        Command::Compare { gf, n_max, n_min, depth, roots, scaling, common } => {
            cmd_compare(gf, *n_min, *n_max, *depth, *roots, *scaling, common)
        }
        Command::Expand { gf, root, order, common } => cmd_expand(gf, root, *order, common),
        Command::Asym { gf, depth, roots, common } => cmd_asym(gf, *depth, *roots, common),
        Command::Report { case, n_max, depth, roots, scaling, prefix_len, common } => {
            if common.format.is_some_and(|f| f != Format::Json) {
                return Err(CliError::Usage("report is JSON only".into()));
            }
            let cfg = CaseConfig {
                n_max: *n_max as usize,
                depth: *depth,
                roots: *roots,
                precision: common.precision(),
                prefix_len: *prefix_len,
                scaling: *scaling,
                exec: common.exec(),
            };
            Ok(json(&case_report(case, &cfg)?))
        }
    }
}

/// Runs a command, writing to --out or stdout.
pub fn run(cli: &Cli) -> Result<()> {
    let text = render(&cli.command)?;
    match &cli.command.common().out {
        Some(path) => std::fs::write(path, text)?,
        None => {
            use std::io::Write;
            std::io::stdout().write_all(text.as_bytes())?;
        }
    }
    Ok(())
}

/// Coefficients 0..=n_max as `coeffs` prints them, for integer-valued families.
pub fn integer_prefix(gf: &str, n_max: usize) -> Result<Vec<Integer>> {
    let cmd = Command::Coeffs {
        gf: gf.into(),
        n_max: n_max as u64,
        float: false,
        common: Common { prec: 20, format: Some(Format::Csv), out: None, sequential: true },
    };
    render(&cmd)?
        .lines()
        .skip(1)
        .map(|l| {
            let v = l.split(',').nth(1).unwrap_or_default();
            v.parse::<Integer>().map_err(|_| CliError::Usage(format!("non-integer coefficient {v}")))
        })
        .collect()
}
