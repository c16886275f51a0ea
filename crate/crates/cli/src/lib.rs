//! Command-line front end for `sigperm-core`.
//!
//! Every command writes to a caller-supplied writer, so output can be
//! captured and compared byte for byte.

pub mod report;

use std::fmt;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sigperm_core::gamma::GammaReport;
use sigperm_core::semiring::to_decimal;
use sigperm_core::{
    c_series, class_signatures, cross_check, decompose_bruteforce, decompose_fast, gamma_class, gamma_sn,
    validate_shape, CrossCheckOptions, Error, Rational, SignedShape, SummandDecomposition,
};

use report::{
    class_rows, ClassInfoDto, ClassesDto, DecompositionDto, GammaReportDto, SeriesDto, SeriesRowDto, VerifyDto,
};

/// Decimal places used for ratios.
pub const RATIO_DIGITS: usize = 12;

#[derive(Debug, Parser)]
#[command(name = "sigperm", version, about = "The invariant gamma of signed permutation modules M^(lambda|mu)")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// gamma over S_n with the value on every class of maximal elementary abelian p-subgroups
    Gamma {
        #[command(flatten)]
        shape: ShapeArgs,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Summands of the restriction to the subgroup generated by disjoint p-cycles
    Decompose {
        #[command(flatten)]
        shape: ShapeArgs,
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long, value_enum, default_value_t = Method::Fast)]
        method: Method,
    },
    /// Core dimensions of tensor powers and their consecutive ratios
    Series {
        #[command(flatten)]
        shape: ShapeArgs,
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long, default_value_t = 40)]
        n_max: usize,
    },
    /// Class signatures of maximal elementary abelian p-subgroups of S_n
    Classes {
        #[command(flatten)]
        shape: ShapeArgs,
        #[command(flatten)]
        common: CommonArgs,
        /// Degree; taken from the shape when omitted
        #[arg(long)]
        n: Option<usize>,
    },
    /// Cross-check every characterization of gamma (default shape (3,1|3,2), p = 3)
    Verify {
        #[command(flatten)]
        shape: ShapeArgs,
        #[command(flatten)]
        common: CommonArgs,
        /// Check random shapes instead of a given one
        #[arg(long)]
        random: bool,
        #[arg(long, default_value_t = 20)]
        count: usize,
        /// Largest n of the random shapes
        #[arg(long, default_value_t = 10)]
        bound: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Skip the brute-force and tensor-square checks
        #[arg(long)]
        quick: bool,
    },
}

#[derive(Debug, Clone, Args)]
pub struct ShapeArgs {
    /// Rows carrying the trivial character, e.g. 3,1
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub lambda: Vec<i64>,
    /// Rows carrying the sign character, e.g. 3,2
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub mu: Vec<i64>,
}

impl ShapeArgs {
    fn is_empty(&self) -> bool {
        self.lambda.is_empty() && self.mu.is_empty()
    }

    fn parse(&self) -> Result<SignedShape, CliError> {
        validate_shape(&self.lambda, &self.mu).map_err(CliError::from)
    }
}

#[derive(Debug, Clone, Args)]
pub struct CommonArgs {
    /// The prime p
    #[arg(short = 'p', long = "prime")]
    pub p: Option<u64>,
    /// Largest basis dimension enumerated explicitly
    #[arg(long, default_value_t = 10_000_000)]
    pub max_dim: u64,
    #[arg(long, value_enum, default_value_t = Output::Text)]
    pub output: Output,
}

impl CommonArgs {
    fn prime(&self) -> Result<u64, CliError> {
        self.p.ok_or_else(|| CliError::usage("missing -p <prime>"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Output {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    /// Count by constituting set
    Fast,
    /// Enumerate orbits of tabloids
    Brute,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Fast => "fast",
            Method::Brute => "brute",
        })
    }
}

/// A failure with the process exit code it maps to.
#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

pub const EXIT_CHECK_FAILED: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_GUARD: u8 = 3;

impl CliError {
    fn usage(message: impl Into<String>) -> Self {
        CliError { code: EXIT_USAGE, message: message.into() }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = if e.is_guard() {
            EXIT_GUARD
        } else {
            match e {
                Error::NotAPartition(_)
                | Error::EmptyShape
                | Error::NotPrime(_)
                | Error::SumMismatch { .. }
                | Error::InconsistentSignature { .. } => EXIT_USAGE,
                _ => EXIT_CHECK_FAILED,
            }
        };
        CliError { code, message: e.to_string() }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError { code: EXIT_CHECK_FAILED, message: format!("write failed: {e}") }
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError { code: EXIT_CHECK_FAILED, message: format!("write failed: {e}") }
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError { code: EXIT_CHECK_FAILED, message: format!("write failed: {e}") }
    }
}

fn write_json<W: Write, T: serde::Serialize>(out: &mut W, value: &T) -> Result<(), CliError> {
    serde_json::to_writer_pretty(&mut *out, value)?;
    writeln!(out)?;
    Ok(())
}

fn csv_writer<W: Write>(out: &mut W) -> csv::Writer<&mut W> {
    csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(out)
}

/// Runs one parsed command, writing its report to `out`.
pub fn run<W: Write>(cli: &Cli, out: &mut W) -> Result<(), CliError> {
    match &cli.command {
        Command::Gamma { shape, common } => {
            let shape = shape.parse()?;
            let report = gamma_sn(&shape, common.prime()?)?;
            emit_gamma(out, common.output, &report)
        }
        Command::Decompose { shape, common, method } => {
            let shape = shape.parse()?;
            let p = common.prime()?;
            let d = match method {
                Method::Fast => decompose_fast(&shape, p)?,
                Method::Brute => decompose_bruteforce(&shape, p, common.max_dim)?,
            };
            emit_decomposition(out, common.output, &shape, *method, &d)
        }
        Command::Series { shape, common, n_max } => {
            let shape = shape.parse()?;
            let p = common.prime()?;
            if *n_max == 0 {
                return Err(CliError::usage("--n-max must be at least 1"));
            }
            let report = gamma_sn(&shape, p)?;
            let d = decompose_fast(&shape, p)?;
            emit_series(out, common.output, &shape, p, &report, &d, *n_max)
        }
        Command::Classes { shape, common, n } => {
            let p = common.prime()?;
            let parsed = if shape.is_empty() { None } else { Some(shape.parse()?) };
            let n = match (n, &parsed) {
                (Some(n), Some(s)) if *n != s.n() => {
                    return Err(CliError::usage(format!("--n {n} disagrees with the shape of size {}", s.n())))
                }
                (Some(n), _) => *n,
                (None, Some(s)) => s.n(),
                (None, None) => return Err(CliError::usage("give --n or a shape")),
            };
            emit_classes(out, common.output, n, p, parsed.as_ref())
        }
        Command::Verify { shape, common, random, count, bound, seed, quick } => {
            let p = common.p.unwrap_or(3);
            let shapes = if *random {
                if !shape.is_empty() {
                    return Err(CliError::usage("--random does not take a shape"));
                }
                if *bound == 0 {
                    return Err(CliError::usage("--bound must be at least 1"));
                }
                random_shapes(*seed, *count, *bound)
            } else if shape.is_empty() {
                vec![SignedShape::new(&[3, 1], &[3, 2])?]
            } else {
                vec![shape.parse()?]
            };
            let mut opts = if *quick { CrossCheckOptions::quick() } else { CrossCheckOptions::default() };
            opts.max_bruteforce_dim = opts.max_bruteforce_dim.min(common.max_dim);
            opts.max_pair_dim = opts.max_pair_dim.min(common.max_dim);
            let reports = shapes.iter().map(|s| cross_check(s, p, &opts)).collect::<Result<Vec<_>, _>>()?;
            emit_verify(out, common.output, &reports)?;
            let failed: Vec<String> = reports
                .iter()
                .flat_map(|r| r.failures().map(move |(name, c)| format!("{} p={}: {name}: {}", r.shape, r.p, c.detail)))
                .collect();
            if failed.is_empty() {
                Ok(())
            } else {
                Err(CliError { code: EXIT_CHECK_FAILED, message: format!("failed checks:\n  {}", failed.join("\n  ")) })
            }
        }
    }
}

/// `count` shapes with `1 <= n <= bound`, reproducible from `seed`.
pub fn random_shapes(seed: u64, count: usize, bound: usize) -> Vec<SignedShape> {
    fn partition(rng: &mut ChaCha8Rng, n: usize) -> Vec<i64> {
        let mut parts = Vec::new();
        let mut left = n;
        while left > 0 {
            let part = rng.gen_range(1..=left);
            parts.push(part as i64);
            left -= part;
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        parts
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let n = rng.gen_range(1..=bound);
            let a = rng.gen_range(0..=n);
            let lambda = partition(&mut rng, a);
            let mu = partition(&mut rng, n - a);
            SignedShape::new(&lambda, &mu).expect("random partitions are valid")
        })
        .collect()
}

fn emit_gamma<W: Write>(out: &mut W, format: Output, r: &GammaReport) -> Result<(), CliError> {
    match format {
        Output::Json => write_json(out, &GammaReportDto::from(r)),
        Output::Csv => {
            let mut w = csv_writer(out);
            w.write_record(["signature", "a0", "rank", "value"])?;
            for (sig, v) in &r.per_class {
                w.write_record([sig.to_string(), sig.a0().to_string(), sig.rank().to_string(), v.to_string()])?;
            }
            w.flush()?;
            Ok(())
        }
        Output::Text => {
            writeln!(out, "{}", r.gamma)?;
            writeln!(out)?;
            write_gamma_details(out, r)
        }
    }
}

fn write_gamma_details<W: Write>(out: &mut W, r: &GammaReport) -> Result<(), CliError> {
    writeln!(out, "shape {}  p = {}  n = {}", r.shape, r.p, r.shape.n())?;
    writeln!(out, "gamma = {}  witness {}", r.gamma, r.witness)?;
    let width = r.per_class.iter().map(|(s, _)| s.to_string().len()).max().unwrap_or(0).max("class".len());
    writeln!(out, "{:<width$}  {:>4}  value", "class", "rank")?;
    for (sig, v) in &r.per_class {
        let mark = if *sig == r.witness { "  *" } else { "" };
        writeln!(out, "{:<width$}  {:>4}  {v}{mark}", sig.to_string(), sig.rank())?;
    }
    let name_width = r.checks.keys().map(String::len).max().unwrap_or(0);
    for (name, c) in &r.checks {
        writeln!(out, "check {name:<name_width$}  {:<7}  {}", c.status.to_string(), c.detail)?;
    }
    Ok(())
}

fn emit_decomposition<W: Write>(
    out: &mut W,
    format: Output,
    shape: &SignedShape,
    method: Method,
    d: &SummandDecomposition,
) -> Result<(), CliError> {
    let dto = DecompositionDto::new(shape, &method.to_string(), d);
    match format {
        Output::Json => write_json(out, &dto),
        Output::Csv => {
            let mut w = csv_writer(out);
            w.write_record(["subset", "size", "dimension", "multiplicity", "projective"])?;
            for row in &dto.classes {
                let size = row.size.to_string();
                let proj = row.projective.to_string();
                w.write_record([&row.subset, &size, &row.dimension, &row.multiplicity, &proj])?;
            }
            w.flush()?;
            Ok(())
        }
        Output::Text => {
            writeln!(out, "shape {shape}  p = {}  k = {}  method {method}", d.p(), d.k())?;
            let rows = class_rows(d);
            let sw = rows.iter().map(|r| r.subset.len()).max().unwrap_or(0).max("subset".len());
            let dw = rows.iter().map(|r| r.dimension.len()).max().unwrap_or(0).max("p^|S|".len());
            writeln!(out, "{:<sw$}  {:>3}  {:>dw$}  multiplicity", "subset", "|S|", "p^|S|")?;
            for r in &rows {
                let proj = if r.projective { "  PROJ" } else { "" };
                writeln!(out, "{:<sw$}  {:>3}  {:>dw$}  {}{proj}", r.subset, r.size, r.dimension, r.multiplicity)?;
            }
            writeln!(out, "total dimension {}", dto.total_dim)?;
            writeln!(out, "non-faithful dimension {}", dto.non_faithful_dim)?;
            writeln!(out, "core dimension {}", dto.core_dim)?;
            Ok(())
        }
    }
}

fn emit_series<W: Write>(
    out: &mut W,
    format: Output,
    shape: &SignedShape,
    p: u64,
    report: &GammaReport,
    d: &SummandDecomposition,
    n_max: usize,
) -> Result<(), CliError> {
    let series = c_series(d, n_max)?;
    let rows: Vec<SeriesRowDto> = series
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let ratio = (i > 0 && !series[i - 1].is_zero()).then(|| {
                let r = Rational::new(BigInt::from(c.clone()), BigInt::from(series[i - 1].clone()));
                to_decimal(&r, RATIO_DIGITS)
            });
            SeriesRowDto { n: i + 1, core_dim: c.to_string(), ratio }
        })
        .collect();
    match format {
        Output::Json => write_json(out, &SeriesDto { shape: shape.into(), p, gamma: report.gamma.to_string(), rows }),
        Output::Csv => {
            let mut w = csv_writer(out);
            w.write_record(["n", "core_dim", "ratio"])?;
            for r in &rows {
                w.write_record([r.n.to_string(), r.core_dim.clone(), r.ratio.clone().unwrap_or_default()])?;
            }
            w.flush()?;
            Ok(())
        }
        Output::Text => {
            writeln!(out, "shape {shape}  p = {p}  gamma = {}", report.gamma)?;
            let cw = rows.iter().map(|r| r.core_dim.len()).max().unwrap_or(0).max("core_dim".len());
            writeln!(out, "{:>4}  {:>cw$}  ratio", "n", "core_dim")?;
            for r in &rows {
                writeln!(out, "{:>4}  {:>cw$}  {}", r.n, r.core_dim, r.ratio.as_deref().unwrap_or("-"))?;
            }
            Ok(())
        }
    }
}

fn emit_classes<W: Write>(
    out: &mut W,
    format: Output,
    n: usize,
    p: u64,
    shape: Option<&SignedShape>,
) -> Result<(), CliError> {
    let sigs = class_signatures(n, p)?;
    let classes = sigs
        .iter()
        .map(|sig| {
            let value = shape.map(|s| gamma_class(s, p, sig)).transpose()?.map(|v| v.to_string());
            Ok(ClassInfoDto { signature: sig.into(), orbit_sizes: sig.orbit_sizes(), rank: sig.rank(), value })
        })
        .collect::<Result<Vec<_>, Error>>()?;
    let dto = ClassesDto { n, p, shape: shape.map(Into::into), classes };
    match format {
        Output::Json => write_json(out, &dto),
        Output::Csv => {
            let mut w = csv_writer(out);
            w.write_record(["signature", "a0", "rank", "value"])?;
            for (sig, c) in sigs.iter().zip(&dto.classes) {
                w.write_record([
                    sig.to_string(),
                    sig.a0().to_string(),
                    sig.rank().to_string(),
                    c.value.clone().unwrap_or_default(),
                ])?;
            }
            w.flush()?;
            Ok(())
        }
        Output::Text => {
            writeln!(out, "n = {n}  p = {p}  {} classes", sigs.len())?;
            let width = sigs.iter().map(|s| s.to_string().len()).max().unwrap_or(0).max("orbits".len());
            let header_value = if shape.is_some() { "  value" } else { "" };
            writeln!(out, "{:<width$}  {:>3}  {:>4}{header_value}", "orbits", "a0", "rank")?;
            for (sig, c) in sigs.iter().zip(&dto.classes) {
                let value = c.value.as_deref().map(|v| format!("  {v}")).unwrap_or_default();
                writeln!(out, "{:<width$}  {:>3}  {:>4}{value}", sig.to_string(), sig.a0(), sig.rank())?;
            }
            Ok(())
        }
    }
}

fn emit_verify<W: Write>(out: &mut W, format: Output, reports: &[GammaReport]) -> Result<(), CliError> {
    let passed = reports.iter().all(GammaReport::all_passed);
    match format {
        Output::Json => {
            write_json(out, &VerifyDto { passed, reports: reports.iter().map(GammaReportDto::from).collect() })
        }
        Output::Csv => {
            let mut w = csv_writer(out);
            w.write_record(["shape", "p", "gamma", "check", "status"])?;
            for r in reports {
                for (name, c) in &r.checks {
                    w.write_record([
                        r.shape.to_string(),
                        r.p.to_string(),
                        r.gamma.to_string(),
                        name.clone(),
                        c.status.to_string(),
                    ])?;
                }
            }
            w.flush()?;
            Ok(())
        }
        Output::Text => {
            for (i, r) in reports.iter().enumerate() {
                if i > 0 {
                    writeln!(out)?;
                }
                write_gamma_details(out, r)?;
            }
            let failed = reports.iter().filter(|r| !r.all_passed()).count();
            writeln!(out)?;
            writeln!(out, "{} of {} shapes passed", reports.len() - failed, reports.len())?;
            Ok(())
        }
    }
}
