//! Subcommand implementations.

use crate::output::{print_json, Format};
use clap::Args;
use invdelta_core::expansion::{AsymptoticEvaluator, ExpansionCoeffSet};
use invdelta_core::inequalities::symbolic::{corollary_symbolic_check, CorollaryTarget};
use invdelta_core::inequalities::{self, ScanOp};
use invdelta_core::numerics::{default_precision, float_decimal, Ball, PiLaurent};
use invdelta_core::rademacher;
use invdelta_core::seqcore::SeqTable;
use invdelta_core::{bessel, Error, Result};
use rug::Rational;
use serde::Serialize;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

pub struct RunConfig {
    pub precision: Option<u32>,
    pub format: Format,
    pub seed: u64,
    pub cache_dir: Option<PathBuf>,
}

impl RunConfig {
    fn precision_for(&self, n: u64) -> u32 {
        self.precision.unwrap_or_else(|| default_precision(n))
    }

    fn cache_file(&self) -> Option<PathBuf> {
        self.cache_dir.as_ref().map(|d| d.join("p24-table.bin"))
    }

    /// Load the cached exact table (if any), extend it to `n_max`, and
    /// checkpoint it back so long scans resume instead of recomputing.
    fn table_to(&self, n_max: u64) -> Result<SeqTable> {
        let mut table = match self.cache_file() {
            Some(path) if path.exists() => {
                let file = std::fs::File::open(&path)?;
                let t = SeqTable::read_cache(std::io::BufReader::new(file))?;
                if t.colors() == 24 {
                    t
                } else {
                    SeqTable::new(24)
                }
            }
            _ => SeqTable::new(24),
        };
        let had = table.n_max();
        table.extend(n_max)?;
        if table.n_max() > had {
            if let Some(path) = self.cache_file() {
                if let Some(parent) = path.parent() {
                    std::fs::create_dir_all(parent)?;
                }
                let tmp = path.with_extension("bin.tmp");
                let mut file = std::io::BufWriter::new(std::fs::File::create(&tmp)?);
                table.write_cache(&mut file)?;
                file.flush()?;
                drop(file);
                std::fs::rename(&tmp, &path)?;
            }
        }
        Ok(table)
    }
}

// ---------------------------------------------------------------- p24

#[derive(Args)]
pub struct P24Args {
    /// Single index to print.
    #[arg(long, conflicts_with_all = ["from", "to"])]
    n: Option<u64>,
    /// Range start for a CSV dump.
    #[arg(long, requires = "to")]
    from: Option<u64>,
    /// Range end for a CSV dump.
    #[arg(long, requires = "from")]
    to: Option<u64>,
}

#[derive(Serialize)]
struct P24Body {
    n: u64,
    p24: String,
}

pub fn p24(config: &RunConfig, args: P24Args) -> Result<ExitCode> {
    match (args.n, args.from, args.to) {
        (Some(n), _, _) => {
            let table = config.table_to(n)?;
            let v = table.get(n)?;
            match config.format {
                Format::Json => print_json("p24", config.seed, P24Body { n, p24: v.to_string() }),
                Format::Csv => println!("{n},{v}"),
                Format::Text => println!("{v}"),
            }
            Ok(ExitCode::SUCCESS)
        }
        (None, Some(a), Some(b)) => {
            if a > b {
                return Err(Error::Range(format!("empty range {a}..{b}")));
            }
            let table = config.table_to(b)?;
            let stdout = std::io::stdout();
            table.write_csv(stdout.lock(), a, b)?;
            Ok(ExitCode::SUCCESS)
        }
        _ => Err(Error::Precondition("pass --n N or --from A --to B".into())),
    }
}

// ---------------------------------------------------------- rademacher

#[derive(Args)]
pub struct RademacherArgs {
    /// Index to evaluate (n >= 2).
    #[arg(long)]
    n: u64,
    /// Truncation point K (chosen automatically when omitted).
    #[arg(long)]
    terms: Option<u32>,
}

#[derive(Serialize)]
struct RademacherBody {
    n: u64,
    terms: u32,
    precision: u32,
    partial_midpoint: String,
    partial_radius: String,
    tail_bound: String,
    resolved: String,
    exact: String,
    matches: bool,
}

pub fn rademacher(config: &RunConfig, args: RademacherArgs) -> Result<ExitCode> {
    let n = args.n;
    let table = config.table_to(n)?;
    let exact = table.get(n)?.clone();
    let (resolution, partial, tail) = match args.terms {
        None => {
            let r = rademacher::p24_via_rademacher(n)?;
            let partial = r.partial.clone();
            let tail = r.tail_bound.clone();
            (r, partial, tail)
        }
        Some(terms) => {
            let prec = config.precision_for(n);
            let partial = rademacher::exact_formula_partial(n, terms, prec)?;
            let tail = rademacher::truncation_tail(n, terms, prec)?;
            let lo = partial.lower() - tail.upper();
            let hi = partial.upper() + tail.upper();
            let bracket = Ball::from_endpoints(&lo, &hi, prec);
            let ints = bracket.integers_within(2).unwrap_or_default();
            if ints.len() != 1 {
                return Err(Error::ResolutionFailure {
                    lo: float_decimal(&lo, 25),
                    hi: float_decimal(&hi, 25),
                });
            }
            let res = rademacher::Resolution {
                value: ints.into_iter().next().unwrap(),
                terms,
                precision: prec,
                partial: partial.clone(),
                tail_bound: tail.clone(),
            };
            (res, partial, tail)
        }
    };
    let matches = resolution.value == exact;
    let body = RademacherBody {
        n,
        terms: resolution.terms,
        precision: resolution.precision,
        partial_midpoint: partial.midpoint_decimal(30),
        partial_radius: partial.radius_decimal(),
        tail_bound: float_decimal(&tail.upper(), 10),
        resolved: resolution.value.to_string(),
        exact: exact.to_string(),
        matches,
    };
    match config.format {
        Format::Json => print_json("rademacher", config.seed, body),
        _ => {
            println!("partial   = {} +/- {}", body.partial_midpoint, body.partial_radius);
            println!("tail      <= {}", body.tail_bound);
            println!("resolved  = {}", body.resolved);
            println!("exact     = {}", body.exact);
            println!("match     = {}", body.matches);
        }
    }
    Ok(if matches { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

// ---------------------------------------------------------------- bessel

#[derive(Args)]
pub struct BesselArgs {
    /// Bessel order.
    #[arg(long)]
    nu: u32,
    /// Argument, as an exact decimal or rational string (e.g. "50.265" or "201/4").
    #[arg(long)]
    x: String,
    /// Asymptotic truncation order N (order 13 only).
    #[arg(long, value_name = "N")]
    terms: Option<u32>,
}

#[derive(Serialize)]
struct BesselBody {
    nu: u32,
    x: String,
    precision: u32,
    series_midpoint: String,
    series_radius: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    asymptotic_midpoint: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    certified_bound: Option<String>,
}

fn parse_positive_rational(s: &str) -> Result<Rational> {
    let parse = |txt: &str| -> Option<Rational> {
        if let Some((int, frac)) = txt.split_once('.') {
            let digits = format!("{int}{frac}");
            let num: rug::Integer = digits.parse().ok()?;
            let den = rug::Integer::from(10).pow(frac.len() as u32);
            Some(Rational::from((num, den)))
        } else {
            txt.parse::<Rational>().ok()
        }
    };
    parse(s)
        .filter(|q| *q > 0)
        .ok_or_else(|| Error::Precondition(format!("not a positive rational: {s}")))
}

use rug::ops::Pow;

pub fn bessel(config: &RunConfig, args: BesselArgs) -> Result<ExitCode> {
    let x = parse_positive_rational(&args.x)?;
    let approx = x.to_f64();
    let prec = config
        .precision
        .unwrap_or_else(|| default_precision((approx * approx / 158.0).ceil() as u64 + 1));
    let xb = Ball::from_rational(&x, prec);
    let series = bessel::i_series(args.nu, &xb)?;
    let mut body = BesselBody {
        nu: args.nu,
        x: args.x.clone(),
        precision: prec,
        series_midpoint: series.midpoint_decimal(30),
        series_radius: series.radius_decimal(),
        asymptotic_midpoint: None,
        certified_bound: None,
    };
    if let Some(terms) = args.terms {
        if args.nu != 13 {
            return Err(Error::Precondition(
                "the certified asymptotic envelope is available for order 13 only".into(),
            ));
        }
        let cv = bessel::i13_asymptotic(&xb, terms)?;
        body.asymptotic_midpoint = Some(cv.value.midpoint_decimal(30));
        body.certified_bound = Some(float_decimal(&cv.bound.upper(), 10));
    }
    match config.format {
        Format::Json => print_json("bessel", config.seed, body),
        _ => {
            println!("midpoint = {}", body.series_midpoint);
            println!("radius   = {}", body.series_radius);
            if let Some(a) = &body.asymptotic_midpoint {
                println!("asymptotic = {a}");
            }
            if let Some(b) = &body.certified_bound {
                println!("bound      = {b}");
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

// ---------------------------------------------------------------- coeffs

#[derive(Args)]
pub struct CoeffsArgs {
    /// Coefficient family.
    #[arg(long, value_parser = ["T", "Ahat", "Bhat", "C", "Btilde"])]
    family: String,
    /// Largest index to emit.
    #[arg(long)]
    upto: u32,
}

#[derive(Serialize)]
struct CoeffsBody {
    family: String,
    coefficients: Vec<PiLaurent>,
}

pub fn coeffs(config: &RunConfig, args: CoeffsArgs) -> Result<ExitCode> {
    let set = ExpansionCoeffSet::new(args.upto);
    let coefficients: Vec<PiLaurent> = match args.family.as_str() {
        "T" => set.t.clone(),
        "Ahat" => set
            .a_hat
            .iter()
            .map(|q| PiLaurent::from_rational(q.clone()))
            .collect(),
        "Bhat" => set.b_hat.clone(),
        "C" => set.c.clone(),
        "Btilde" => set.b_tilde.clone(),
        _ => unreachable!("clap validates the family"),
    };
    match config.format {
        Format::Csv => {
            println!("m,coefficient");
            for (m, c) in coefficients.iter().enumerate() {
                println!("{m},\"{c}\"");
            }
        }
        Format::Json => print_json(
            "coeffs",
            config.seed,
            CoeffsBody {
                family: args.family,
                coefficients,
            },
        ),
        Format::Text => {
            for (m, c) in coefficients.iter().enumerate() {
                println!("{}[{m}] = {c}", args.family);
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

// ---------------------------------------------------------------- expand

#[derive(Args)]
pub struct ExpandArgs {
    /// Evaluation index.
    #[arg(long)]
    n: u64,
    /// Truncation order N.
    #[arg(long)]
    order: u32,
    /// Compare against the exact value when n is at most this cap.
    #[arg(long, default_value_t = 5000)]
    compare_upto: u64,
}

#[derive(Serialize)]
struct ExpandBody {
    n: u64,
    order: u32,
    cutoff: u64,
    value_midpoint: String,
    value_radius: String,
    bound: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    exact: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    contains_exact: Option<bool>,
}

pub fn expand(config: &RunConfig, args: ExpandArgs) -> Result<ExitCode> {
    let prec = config.precision_for(args.n) + 64;
    let evaluator = AsymptoticEvaluator::new(args.order, prec)?;
    let cv = evaluator.eval(args.n)?;
    let mut body = ExpandBody {
        n: args.n,
        order: args.order,
        cutoff: evaluator.n_cutoff,
        value_midpoint: cv.value.midpoint_decimal(30),
        value_radius: cv.value.radius_decimal(),
        bound: float_decimal(&cv.bound.upper(), 10),
        exact: None,
        contains_exact: None,
    };
    let mut ok = true;
    if args.n <= args.compare_upto {
        let table = config.table_to(args.n)?;
        let exact = table.get(args.n)?;
        let contains = cv.contains_integer(exact);
        body.exact = Some(exact.to_string());
        body.contains_exact = Some(contains);
        ok = contains;
    }
    match config.format {
        Format::Json => print_json("expand", config.seed, body),
        _ => {
            println!("value  = {} +/- {}", body.value_midpoint, body.value_radius);
            println!("bound  = {}", body.bound);
            if let Some(e) = &body.exact {
                println!("exact  = {e}");
                println!("inside = {}", body.contains_exact.unwrap());
            }
        }
    }
    Ok(if ok { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

// ------------------------------------------------------------------ scan

#[derive(Args)]
pub struct ScanArgs {
    /// Operator to scan.
    #[arg(long, value_parser = ["logconcave", "r-logconcave", "turan3", "laguerre", "jensen"])]
    op: String,
    /// Iteration depth for r-logconcave.
    #[arg(long, default_value_t = 1)]
    r: u32,
    /// Laguerre order.
    #[arg(long, default_value_t = 2)]
    m: u32,
    /// Jensen polynomial degree.
    #[arg(long, default_value_t = 3)]
    d: u32,
    #[arg(long)]
    from: u64,
    #[arg(long)]
    to: u64,
    /// Also stream CSV rows (n, exact_value, sign) to this file.
    #[arg(long)]
    csv: Option<PathBuf>,
}

pub fn scan(config: &RunConfig, args: ScanArgs) -> Result<ExitCode> {
    let op = match args.op.as_str() {
        "logconcave" => ScanOp::RLogConcave(1),
        "r-logconcave" => ScanOp::RLogConcave(args.r),
        "turan3" => ScanOp::Turan3,
        "laguerre" => ScanOp::Laguerre(args.m),
        "jensen" => ScanOp::Jensen(args.d),
        _ => unreachable!(),
    };
    let table = config.table_to(args.to + op.lookahead())?;
    if let Some(path) = &args.csv {
        let mut w = std::io::BufWriter::new(std::fs::File::create(path)?);
        stream_csv_rows(&mut w, &table, op, args.from.max(op.min_index()), args.to)?;
        w.flush()?;
    }
    let report = inequalities::scan(&table, op, args.from, args.to)?;
    match config.format {
        Format::Json => print_json("scan", config.seed, &report),
        Format::Csv => {
            let stdout = std::io::stdout();
            stream_csv_rows(
                &mut stdout.lock(),
                &table,
                op,
                args.from.max(op.min_index()),
                args.to,
            )?;
        }
        Format::Text => {
            println!("operator       = {}", report.operator);
            println!("range          = [{}, {}]", report.n_lo, report.n_hi);
            println!("violations     = {:?}", report.violations);
            println!("zeros          = {:?}", report.zeros);
            println!("all_hold_from  = {:?}", report.all_hold_from);
        }
    }
    Ok(ExitCode::SUCCESS)
}

/// CSV columns: n, exact_value (decimal), sign. The Jensen operator has no
/// single scalar value; its rows carry the hyperbolicity indicator.
fn stream_csv_rows<W: Write>(
    w: &mut W,
    table: &SeqTable,
    op: ScanOp,
    from: u64,
    to: u64,
) -> Result<()> {
    writeln!(w, "n,exact_value,sign")?;
    match op {
        ScanOp::RLogConcave(r) => {
            let base = &table.values()[from as usize..=(to + 2 * r as u64) as usize];
            let mut level = base.to_vec();
            for _ in 0..r {
                level = level
                    .windows(3)
                    .map(inequalities::log_concavity_value)
                    .collect();
            }
            for (i, v) in level.iter().enumerate() {
                writeln!(w, "{},{},{}", from + i as u64, v, sign_str(v.cmp0()))?;
            }
        }
        ScanOp::Turan3 => {
            for n in from..=to {
                let v = inequalities::turan3_value(table, n)?;
                writeln!(w, "{n},{v},{}", sign_str(v.cmp0()))?;
            }
        }
        ScanOp::Laguerre(m) => {
            for n in from..=to {
                let v = inequalities::laguerre_value(table, m, n)?;
                writeln!(w, "{n},{v},{}", sign_str(v.cmp0()))?;
            }
        }
        ScanOp::Jensen(d) => {
            for n in from..=to {
                let hyp = inequalities::is_hyperbolic(&inequalities::jensen_poly(table, d, n)?.poly);
                let v = if hyp { 1 } else { -1 };
                writeln!(w, "{n},{v},{v}")?;
            }
        }
    }
    Ok(())
}

fn sign_str(o: std::cmp::Ordering) -> i8 {
    o as i8
}

// ---------------------------------------------------------------- verify

#[derive(Args)]
pub struct VerifyArgs {
    /// Verification target.
    #[arg(long, value_parser = ["corollary1", "corollary2", "corollary3", "conjecture"])]
    target: String,
    /// Laguerre order for corollary3.
    #[arg(long)]
    m: Option<u32>,
    /// Series depth for the symbolic checks.
    #[arg(long, default_value_t = 12)]
    depth: u32,
}

#[derive(Serialize)]
struct VerifyBody {
    target: String,
    reports: Vec<invdelta_core::inequalities::symbolic::CorollaryReport>,
    all_match: bool,
}

pub fn verify(config: &RunConfig, args: VerifyArgs) -> Result<ExitCode> {
    if args.target == "conjecture" {
        let m = args.m.unwrap_or(1);
        let conj = ConjectureArgs {
            m,
            points: "1000,5000,20000".into(),
        };
        return conjecture(config, conj);
    }
    let targets: Vec<CorollaryTarget> = match args.target.as_str() {
        "corollary1" => vec![CorollaryTarget::Turan3],
        "corollary2" => vec![CorollaryTarget::LogConcave2],
        "corollary3" => match args.m {
            Some(m) => vec![CorollaryTarget::Laguerre(m)],
            None => (2..=8).map(CorollaryTarget::Laguerre).collect(),
        },
        _ => unreachable!(),
    };
    let mut reports = Vec::new();
    let mut all_match = true;
    for t in targets {
        let rep = corollary_symbolic_check(t, args.depth)?;
        all_match &= rep.matches;
        reports.push(rep);
    }
    match config.format {
        Format::Json => print_json(
            "verify",
            config.seed,
            VerifyBody {
                target: args.target,
                reports,
                all_match,
            },
        ),
        _ => {
            for rep in &reports {
                println!(
                    "{}: leading[z^{}] = {}  (expected {})",
                    rep.target, rep.leading_order, rep.leading, rep.expected_leading
                );
                if let (Some(got), Some(exp)) = (&rep.subleading, &rep.expected_subleading) {
                    println!(
                        "{}: subleading[z^{}] = {}  (expected {})",
                        rep.target,
                        rep.leading_order + 1,
                        got,
                        exp
                    );
                }
                println!(
                    "{}: vanishing below leading verified = {}, matches = {}",
                    rep.target, rep.vanishing_verified, rep.matches
                );
            }
        }
    }
    Ok(if all_match { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

// ------------------------------------------------------------- conjecture

#[derive(Args)]
pub struct ConjectureArgs {
    /// Laguerre order.
    #[arg(long, default_value_t = 1)]
    m: u32,
    /// Comma-separated evaluation points.
    #[arg(long, default_value = "1000,5000,20000")]
    points: String,
}

#[derive(Serialize)]
struct ConjecturePoint {
    n: u64,
    ratio_midpoint: String,
    ratio_radius: String,
}

#[derive(Serialize)]
struct ConjectureBody {
    m: u32,
    points: Vec<ConjecturePoint>,
}

pub fn conjecture(config: &RunConfig, args: ConjectureArgs) -> Result<ExitCode> {
    let points: Vec<u64> = args
        .points
        .split(',')
        .map(|p| {
            p.trim()
                .parse::<u64>()
                .map_err(|_| Error::Precondition(format!("bad point: {p}")))
        })
        .collect::<Result<_>>()?;
    let max = points.iter().copied().max().unwrap_or(0);
    let table = config.table_to(max + 2 * args.m as u64)?;
    let ratios = inequalities::conjecture_scan(&table, args.m, &points)?;
    let body = ConjectureBody {
        m: args.m,
        points: ratios
            .iter()
            .map(|(n, r)| ConjecturePoint {
                n: *n,
                ratio_midpoint: r.midpoint_decimal(12),
                ratio_radius: r.radius_decimal(),
            })
            .collect(),
    };
    match config.format {
        Format::Json => print_json("conjecture", config.seed, body),
        _ => {
            for p in &body.points {
                println!("m={} n={}: ratio = {} +/- {}", args.m, p.n, p.ratio_midpoint, p.ratio_radius);
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

// -------------------------------------------------------------- calibrate

#[derive(Args)]
pub struct CalibrateArgs {
    #[arg(long, default_value_t = 2)]
    from: u64,
    #[arg(long, default_value_t = 60)]
    to: u64,
    /// Write the JSON report to this path as well.
    #[arg(long)]
    report: Option<PathBuf>,
}

pub fn calibrate(config: &RunConfig, args: CalibrateArgs) -> Result<ExitCode> {
    let table = config.table_to(args.to)?;
    let report = rademacher::calibrate(&table, args.from, args.to)?;
    let json = serde_json::to_string_pretty(&report).expect("report serialization");
    if let Some(path) = &args.report {
        std::fs::write(path, &json)?;
    }
    match config.format {
        Format::Json => print_json("calibrate", config.seed, &report),
        _ => println!("{json}"),
    }
    Ok(ExitCode::SUCCESS)
}
