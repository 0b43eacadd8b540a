use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde_json::{json, Value};

use dilated_basis::appendix::{interval_bound, lower_bound_spk_with, reference_coefficient, reference_rows, Placement};
use dilated_basis::criterion::{check_multi_term_with, Verdict};
use dilated_basis::dirichlet::{eval_multiplier_truncated, jump_smoothed_multiplier, SupportSet};
use dilated_basis::profiles::{CoefficientSeries, ProfileSpec};
use dilated_basis::thresholds::{named_recipe, scan, solve_with, Figure, ScanOptions, Table, RECIPE_NAMES};
use dilated_basis::torusmin::MinOptions;
use dilated_basis::{selftest, Error};

#[derive(Parser, Debug)]
#[command(name = "dilated-basis", version, about = "Riesz basis criteria for dilated periodic profiles")]
#[command(subcommand_required = true, arg_required_else_help = true)]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Common {
    /// Output format; defaults to csv for scan, json otherwise.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Write output here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Tolerance override (root width, or minimiser refinement for check).
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Grid points per torus axis.
    #[arg(long, global = true)]
    grid_n: Option<usize>,
    /// Worker threads.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Exit with status 1 when a check is inconclusive.
    #[arg(long, global = true)]
    strict: bool,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Format {
    Csv,
    Json,
}

#[derive(Args, Debug, Clone)]
struct ProfileArgs {
    /// jump, jump-smoothed, trapezoid, cubic or psine.
    #[arg(long)]
    profile: String,
    #[arg(long, conflicts_with_all = ["alpha", "beta", "p", "eps"])]
    param: Option<f64>,
    #[arg(long)]
    alpha: Option<f64>,
    #[arg(long)]
    beta: Option<f64>,
    #[arg(long)]
    p: Option<f64>,
    #[arg(long)]
    eps: Option<f64>,
}

impl ProfileArgs {
    fn spec(&self) -> Result<ProfileSpec, CliError> {
        let given: Vec<f64> = [self.param, self.alpha, self.beta, self.p, self.eps].into_iter().flatten().collect();
        if given.len() > 1 {
            return Err(CliError::Usage("give exactly one profile parameter".into()));
        }
        Ok(ProfileSpec::from_kind(&self.profile, given.first().copied())?)
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Fourier sine coefficients and envelope values.
    Coeffs {
        #[command(flatten)]
        profile: ProfileArgs,
        /// Largest index.
        #[arg(long, default_value_t = 25)]
        n: usize,
    },
    /// Runs the multi-term criterion.
    Check {
        #[command(flatten)]
        profile: ProfileArgs,
        /// Comma-separated support containing 1.
        #[arg(long, value_delimiter = ',', default_value = "1")]
        support: Vec<u64>,
        #[arg(long, default_value_t = 0)]
        k: usize,
    },
    /// Computes a named threshold.
    Threshold {
        #[arg(long, required_unless_present = "all")]
        name: Option<String>,
        /// Compute every named threshold.
        #[arg(long, conflicts_with = "name")]
        all: bool,
        /// Bracket override.
        #[arg(long, requires = "hi", conflicts_with = "all")]
        lo: Option<f64>,
        #[arg(long, requires = "lo", conflicts_with = "all")]
        hi: Option<f64>,
    },
    /// Emits the data behind a figure.
    Scan {
        /// 1-left, 1-right, 2, 3-top, 3-bottom-left, 3-bottom-right, 4-left or 4-right.
        #[arg(long)]
        figure: String,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        lo: Option<f64>,
        #[arg(long)]
        hi: Option<f64>,
        /// Comma-separated values of k for sweeps.
        #[arg(long, value_delimiter = ',')]
        ks: Option<Vec<usize>>,
    },
    /// Chord/tangent lower bound for a p-sine coefficient.
    Bound {
        #[arg(long, required_unless_present = "table")]
        k: Option<usize>,
        #[arg(long, required_unless_present = "table")]
        p: Option<f64>,
        /// Node counts per monotone piece, in order along [0, 1].
        #[arg(long, value_delimiter = ',', required_unless_present = "table")]
        counts: Option<Vec<usize>>,
        #[arg(long, value_enum, default_value = "uniform-u")]
        placement: PlacementArg,
        /// Also scan p over (1, p] and report the minimum.
        #[arg(long)]
        interval: bool,
        /// Recompute the reference table rows.
        #[arg(long, conflicts_with_all = ["k", "p", "counts"])]
        table: bool,
    },
    /// Evaluates the multiplier Σ f̂(j) j^{-z}.
    Multiplier {
        #[command(flatten)]
        profile: ProfileArgs,
        #[arg(long)]
        re: f64,
        #[arg(long, default_value_t = 0.0)]
        im: f64,
        #[arg(long, default_value_t = 100_000)]
        jmax: usize,
    },
    /// Runs the quick consistency checks.
    Selftest,
}

#[derive(ValueEnum, Debug, Clone, Copy)]
enum PlacementArg {
    UniformU,
    UniformI,
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Lib(Error),
    Io(io::Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Lib(e)
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Lib(e) if e.is_numerical() => 3,
            _ => 2,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Lib(e) => write!(f, "{e}"),
            CliError::Io(e) => write!(f, "i/o error: {e}"),
        }
    }
}

enum Output {
    Json(Value),
    Table(Table),
}

/// Output plus whether the command's verdict was positive.
struct Outcome {
    output: Output,
    positive: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("dilated-basis: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn run(cli: &Cli) -> Result<u8, CliError> {
    let common = &cli.common;
    let min = MinOptions {
        grid_n: common.grid_n,
        jobs: common.jobs,
        ..MinOptions::default()
    };
    if let Some(t) = common.tol {
        if t.is_nan() || t <= 0.0 {
            return Err(CliError::Usage(format!("--tol must be positive, got {t}")));
        }
    }
    let outcome = match &cli.command {
        Command::Coeffs { profile, n } => coeffs(&profile.spec()?, *n)?,
        Command::Check { profile, support, k } => {
            let series = CoefficientSeries::new(profile.spec()?)?;
            let support = SupportSet::new(support)?;
            let opts = MinOptions {
                refine_tol: common.tol.unwrap_or(min.refine_tol),
                ..min
            };
            let report = check_multi_term_with(&series, &support, *k, &opts)?;
            Outcome {
                positive: report.verdict == Verdict::Equivalent,
                output: Output::Json(to_value(&report)),
            }
        }
        Command::Threshold { name, all, lo, hi } => {
            let names: Vec<String> = if *all {
                RECIPE_NAMES.iter().map(|s| s.to_string()).collect()
            } else {
                vec![name.clone().expect("clap requires --name without --all")]
            };
            let mut results = Vec::new();
            for n in &names {
                let mut recipe = named_recipe(n)?;
                if let Some(t) = common.tol {
                    recipe.tol = t;
                }
                if let (Some(a), Some(b)) = (lo, hi) {
                    recipe.bracket = (*a, *b);
                }
                results.push(to_value(&solve_with(&recipe, &min)?));
            }
            let output = if *all { Value::Array(results) } else { results.remove(0) };
            Outcome {
                output: Output::Json(output),
                positive: true,
            }
        }
        Command::Scan { figure, n, lo, hi, ks } => {
            let figure = Figure::from_id(figure)?;
            let range = match (lo, hi) {
                (Some(a), Some(b)) => Some((*a, *b)),
                (None, None) => None,
                _ => return Err(CliError::Usage("--lo and --hi go together".into())),
            };
            if range.is_some() && figure.is_sweep() {
                return Err(CliError::Usage(format!("figure {} is a sweep over k; use --ks", figure.id())));
            }
            let opts = ScanOptions {
                n: *n,
                range,
                ks: ks.clone(),
                tol: common.tol,
                min,
            };
            Outcome {
                output: Output::Table(scan(figure, &opts)?),
                positive: true,
            }
        }
        Command::Bound {
            k,
            p,
            counts,
            placement,
            interval,
            table,
        } => bound(*k, *p, counts.as_deref(), *placement, *interval, *table)?,
        Command::Multiplier { profile, re, im, jmax } => {
            let spec = profile.spec()?;
            let z = Complex64::new(*re, *im);
            let (value, tail) = match spec {
                ProfileSpec::JumpSmoothed { eps } if eps > 0.0 => (jump_smoothed_multiplier(eps, z)?, None),
                _ => {
                    let (v, t) = eval_multiplier_truncated(&spec, z, *jmax)?;
                    (v, Some(t))
                }
            };
            Outcome {
                output: Output::Json(json!({
                    "profile": spec,
                    "z": {"re": re, "im": im},
                    "value": {"re": value.re, "im": value.im},
                    "jmax": if tail.is_some() { Some(jmax) } else { None },
                    "tail_bound": tail,
                })),
                positive: true,
            }
        }
        Command::Selftest => {
            let report = selftest::run();
            for c in &report.checks {
                eprintln!("{} {}: {}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail);
            }
            Outcome {
                positive: report.all_passed(),
                output: Output::Json(to_value(&report)),
            }
        }
    };

    let default = match cli.command {
        Command::Scan { .. } => Format::Csv,
        _ => Format::Json,
    };
    let text = render(&outcome.output, common.format.unwrap_or(default))?;
    match &common.out {
        Some(path) => fs::write(path, text)?,
        None => io::stdout().lock().write_all(text.as_bytes())?,
    }
    let failed_selftest = matches!(cli.command, Command::Selftest) && !outcome.positive;
    Ok(if (common.strict && !outcome.positive) || failed_selftest { 1 } else { 0 })
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report types serialize")
}

fn coeffs(spec: &ProfileSpec, n: usize) -> Result<Outcome, CliError> {
    if n == 0 {
        return Err(CliError::Usage("--n must be positive".into()));
    }
    let series = CoefficientSeries::new(*spec)?;
    let c = series.coeffs(n)?;
    let env: Vec<f64> = match (1..=n).map(|j| series.envelope(j)).collect::<Result<Vec<_>, _>>() {
        Ok(v) => v,
        Err(Error::Unsupported(_)) => vec![f64::NAN; n],
        Err(e) => return Err(e.into()),
    };
    let rows = (1..=n).map(|j| vec![j as f64, c[j - 1], env[j - 1]]).collect();
    Ok(Outcome {
        output: Output::Table(Table {
            name: spec.to_string(),
            columns: vec!["j".into(), "coeff".into(), "envelope".into()],
            rows,
        }),
        positive: true,
    })
}

fn bound(
    k: Option<usize>,
    p: Option<f64>,
    counts: Option<&[usize]>,
    placement: PlacementArg,
    interval: bool,
    table: bool,
) -> Result<Outcome, CliError> {
    let placement = match placement {
        PlacementArg::UniformU => Placement::UniformU,
        PlacementArg::UniformI => Placement::UniformI,
    };
    if table {
        let mut rows = Vec::new();
        let mut all_valid = true;
        for row in reference_rows() {
            let b = lower_bound_spk_with(row.k, row.lambda, &row.counts, placement)?;
            let exact = reference_coefficient(row.k, row.lambda)?;
            all_valid &= b.total < exact;
            rows.push(json!({
                "k": row.k,
                "lambda": row.lambda,
                "counts": row.counts,
                "bound": b.total,
                "reference": row.value,
                "coefficient": exact,
                "valid": b.total < exact,
            }));
        }
        return Ok(Outcome {
            output: Output::Json(Value::Array(rows)),
            positive: all_valid,
        });
    }
    let (k, p, counts) = (k.expect("clap"), p.expect("clap"), counts.expect("clap"));
    let b = lower_bound_spk_with(k, p, counts, placement)?;
    let exact = reference_coefficient(k, p)?;
    let mut out = json!({
        "bound": to_value(&b),
        "coefficient": exact,
        "valid": b.total < exact,
    });
    if interval {
        if placement != Placement::UniformU {
            return Err(CliError::Usage("--interval uses the default placement".into()));
        }
        out["interval"] = to_value(&interval_bound(k, counts, p)?);
    }
    Ok(Outcome {
        output: Output::Json(out),
        positive: b.total < exact,
    })
}

/// `{:.16e}`: 17 significant digits, enough to round-trip any `f64`.
fn fmt_float(v: f64) -> String {
    if v.is_nan() {
        "NaN".into()
    } else if v.is_infinite() {
        if v > 0.0 { "inf".into() } else { "-inf".into() }
    } else {
        format!("{v:.16e}")
    }
}

fn render(output: &Output, format: Format) -> Result<String, CliError> {
    match (output, format) {
        (Output::Json(v), Format::Json) => Ok(serde_json::to_string_pretty(v).expect("json values render") + "\n"),
        (Output::Table(t), Format::Json) => {
            Ok(serde_json::to_string_pretty(&to_value(t)).expect("json values render") + "\n")
        }
        (Output::Table(t), Format::Csv) => {
            let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
            w.write_record(&t.columns).map_err(csv_err)?;
            for row in &t.rows {
                w.write_record(row.iter().map(|&v| fmt_float(v))).map_err(csv_err)?;
            }
            let bytes = w.into_inner().map_err(|e| CliError::Io(e.into_error()))?;
            Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
        }
        (Output::Json(_), Format::Csv) => Err(CliError::Usage("this command only produces json".into())),
    }
}

fn csv_err(e: csv::Error) -> CliError {
    CliError::Io(io::Error::other(e))
}
