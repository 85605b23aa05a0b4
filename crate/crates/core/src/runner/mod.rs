//! Command-line front end. Every subcommand emits one report:
//!
//! ```text
//! {"schema_version": 1, "command": "...", "config": {...}, "passed": true, "result": ...}
//! ```
//!
//! or, with `--format csv`, a table whose columns are listed per command in
//! the README. Exit status is 0 on success, 1 when an asserted check
//! fails, 2 for malformed input and 3 when a computation is refused as too
//! large.

pub mod checks;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;
use serde_json::{json, Value};

use crate::appendix::{
    ball_partition, ball_partition_counts, ball_partition_ratios, decay_table, separation_lower_bound_check,
};
use crate::cache::{min_moment_cached, SearchCache};
use crate::certificates::{
    beta0, certify_grid, proof_polynomials_report, reference_constants, sweep_theorem, CandidateBound, Region,
    Theorem,
};
use crate::cube::{CubeSet, Dimension, Side};
use crate::error::{Error, Result};
use crate::fourier::semigroup::MAX_SEMIGROUP_DIM;
use crate::fourier::talagrand::{DEFAULT_SAMPLES, DEFAULT_SEED};
use crate::fourier::{
    check_semigroup_identity, fbound_ratio, noise_stability_suite, spectral_stats, talagrand_df_norm,
    CorpusFunction, CubeFunction, TalagrandMode,
};
use crate::harper::harper_table;
use crate::search::{min_moment, min_partition_functional, Method, SearchConfig, DEFAULT_BUDGET};

pub use checks::{all_checks, Check};

pub const SCHEMA_VERSION: u32 = 1;
/// Environment variable naming the search cache directory.
pub const CACHE_DIR_ENV: &str = "HYPERCUBE_ISO_CACHE_DIR";
/// Semigroup identity tolerance asserted by `fourier`.
pub const IDENTITY_TOLERANCE: f64 = 1e-9;

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_REFUSED: i32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(name = "hypercube-iso", version, about = "Boundary functionals and inequality checks on the discrete cube")]
pub struct Cli {
    /// Report format.
    #[arg(long, global = true, value_enum, default_value = "json")]
    pub format: Format,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// Search cache directory; overrides the environment variable.
    #[arg(long, global = true)]
    pub cache_dir: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Subcommand, Serialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
pub enum Command {
    /// Exact minimum edge boundary for every (or one) cardinality.
    Harper {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        m: Option<u64>,
    },
    /// Minimum of a boundary moment over sets of fixed size.
    Minimize {
        #[arg(long)]
        n: u32,
        /// Set size.
        #[arg(long, conflicts_with = "t")]
        m: Option<u64>,
        /// Measure, written m/2^n (for example 3/8 or 0.375).
        #[arg(long)]
        t: Option<String>,
        #[arg(long)]
        beta: f64,
        /// h, hc or w.
        #[arg(long, default_value = "h")]
        side: String,
        /// exhaustive or symmetry_reduced.
        #[arg(long, default_value = "exhaustive")]
        method: String,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        /// Run even when the enumeration exceeds the budget.
        #[arg(long)]
        allow_over_budget: bool,
        /// Skip the result cache.
        #[arg(long)]
        no_cache: bool,
    },
    /// Grid certificate of the two-point inequality, a set-level sweep or
    /// the exact polynomial checks.
    Certify {
        #[arg(long, default_value = "log_quadratic_max")]
        candidate: String,
        /// Defaults to log2(3/2).
        #[arg(long)]
        beta: Option<f64>,
        #[arg(long, default_value_t = 1024)]
        resolution: u32,
        #[arg(long, default_value = "full_triangle")]
        region: String,
        /// Sweep this set-level inequality over all subsets instead.
        #[arg(long, conflicts_with = "polynomials")]
        theorem: Option<String>,
        /// Dimension of the sweep.
        #[arg(long, default_value_t = 4)]
        n: u32,
        /// Run the exact polynomial checks instead.
        #[arg(long)]
        polynomials: bool,
    },
    /// Spectral statistics, gradient bounds and semigroup checks.
    Fourier {
        /// Corpus name (dictator[:j], parity, majority, tribes[:w],
        /// half_cube[:j], hamming_ball[:r]) or a cube set `n=<n>:<hex>`
        /// read as the function -1 on the set and +1 off it.
        function: String,
        #[arg(long)]
        n: Option<u32>,
        #[arg(long, default_value_t = 1.0)]
        p: f64,
        #[arg(long, default_value_t = 0.5)]
        t: f64,
        /// Level for the tail comparison.
        #[arg(long)]
        d: Option<u32>,
    },
    /// The mixed norm ||Df||_p.
    Talagrand {
        function: String,
        #[arg(long)]
        n: Option<u32>,
        #[arg(long, default_value_t = 1.0)]
        p: f64,
        /// exact, monte_carlo or auto.
        #[arg(long, default_value = "auto")]
        mode: String,
        #[arg(long, default_value_t = DEFAULT_SAMPLES)]
        samples: u64,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Minimum of |∇(A,B)| + K n^beta |W| over partitions with mu(A) = 1/2.
    Partition {
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = 0.53)]
        beta: f64,
        #[arg(long, default_value_t = 1.0)]
        k: f64,
    },
    /// Hamming-ball decay tables and partition ratios.
    Appendix {
        #[arg(long, default_value_t = 0.4)]
        beta: f64,
        /// Largest even n in the decay table.
        #[arg(long, default_value_t = 24)]
        n_max: u32,
        /// Largest odd n in the partition table.
        #[arg(long, default_value_t = 25)]
        odd_n_max: u32,
        #[arg(long, default_value_t = 1.0)]
        k: f64,
    },
    /// Numerical constants against their printed digits.
    Constants,
    /// The full reproduction suite.
    AllChecks,
}

/// Column names and rows for CSV output.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    fn new(header: &[&str]) -> Self {
        Table { header: header.iter().map(|s| s.to_string()).collect(), rows: Vec::new() }
    }

    fn push(&mut self, row: Vec<String>) {
        self.rows.push(row);
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub command: String,
    pub config: Value,
    pub passed: bool,
    pub result: Value,
    #[serde(skip)]
    pub table: Option<Table>,
}

fn to_value<T: Serialize>(v: &T) -> Result<Value> {
    serde_json::to_value(v).map_err(|e| Error::Io(e.to_string()))
}

fn dim(n: u32) -> Result<Dimension> {
    Dimension::new(n)
}

/// Parses a measure `t` as `m / 2^n`, returning `m`. Accepts `a/b` with
/// integers or a decimal.
pub fn parse_dyadic(s: &str, n: Dimension) -> Result<u64> {
    let total = n.vertex_count() as u64;
    let reject = || {
        Error::Parse(format!(
            "t = {s} is not dyadic at n = {n}: need t = m/2^{n} with integer 0 <= m <= {total}"
        ))
    };
    let m = if let Some((a, b)) = s.split_once('/') {
        let a: BigUint = a.trim().parse().map_err(|_| reject())?;
        let b: BigUint = b.trim().parse().map_err(|_| reject())?;
        if b.is_zero() {
            return Err(reject());
        }
        let scaled = a * total;
        if !(&scaled % &b).is_zero() {
            return Err(reject());
        }
        (scaled / b).to_u64().ok_or_else(reject)?
    } else {
        let t: f64 = s.trim().parse().map_err(|_| reject())?;
        let scaled = t * total as f64;
        if !(scaled.is_finite() && scaled >= 0.0 && scaled.fract() == 0.0) {
            return Err(reject());
        }
        scaled as u64
    };
    if m > total {
        return Err(reject());
    }
    Ok(m)
}

fn parse_function(spec: &str, n: Option<u32>) -> Result<(CubeFunction, String)> {
    if spec.starts_with("n=") {
        let a: CubeSet = spec.parse()?;
        if n.is_some_and(|n| n != a.dim().get()) {
            return Err(Error::Parse(format!("--n disagrees with the dimension of {spec}")));
        }
        return Ok((CubeFunction::signed(&a)?, spec.to_string()));
    }
    let c: CorpusFunction = spec.parse()?;
    let n = n.ok_or_else(|| Error::Parse(format!("corpus function {spec} needs --n")))?;
    Ok((c.build(dim(n)?)?, c.to_string()))
}

fn cache_for(cli_dir: &Option<PathBuf>) -> Option<SearchCache> {
    cli_dir
        .clone()
        .or_else(|| std::env::var_os(CACHE_DIR_ENV).map(PathBuf::from))
        .map(SearchCache::in_dir)
}

/// Runs one command and builds its report.
pub fn execute(command: &Command, cache_dir: &Option<PathBuf>) -> Result<Report> {
    let config = to_value(command)?;
    let (name, passed, result, table) = match command {
        Command::Harper { n, m } => {
            let d = dim(*n)?;
            let mut rows = harper_table(d);
            if let Some(m) = m {
                if *m > d.vertex_count() as u64 {
                    return Err(Error::out_of_range("m", m, format!("need 0 <= m <= 2^{d}")));
                }
                rows.retain(|r| r.m == *m);
            }
            let mut t = Table::new(&["n", "m", "numerator", "value"]);
            for r in &rows {
                t.push(vec![n.to_string(), r.m.to_string(), r.numerator.to_string(), r.value.to_string()]);
            }
            ("harper", true, to_value(&rows)?, Some(t))
        }
        Command::Minimize { n, m, t, beta, side, method, budget, allow_over_budget, no_cache } => {
            let d = dim(*n)?;
            let m = match (m, t) {
                (Some(m), _) => *m,
                (None, Some(t)) => parse_dyadic(t, d)?,
                (None, None) => return Err(Error::Parse("minimize needs --m or --t".into())),
            };
            let side: Side = side.parse()?;
            let method: Method = method.parse()?;
            let cfg = SearchConfig { budget: *budget, allow_over_budget: *allow_over_budget, ..Default::default() };
            let result = match cache_for(cache_dir).filter(|_| !no_cache) {
                Some(cache) => min_moment_cached(&cache, d, m, *beta, side, method, &cfg)?.0,
                None => min_moment(d, m, *beta, side, method, &cfg)?,
            };
            ("minimize", true, to_value(&result)?, None)
        }
        Command::Certify { candidate, beta, resolution, region, theorem, n, polynomials } => {
            if *polynomials {
                let r = proof_polynomials_report();
                let mut t = Table::new(&["name", "passed", "detail"]);
                for c in &r.checks {
                    t.push(vec![c.name.clone(), c.passed.to_string(), c.detail.clone()]);
                }
                ("certify", r.passed, to_value(&r)?, Some(t))
            } else if let Some(name) = theorem {
                let th = Theorem::parse(name, *beta)?;
                let r = sweep_theorem(dim(*n)?, th)?;
                ("certify", r.passed, to_value(&r)?, None)
            } else {
                let beta = beta.unwrap_or_else(beta0);
                let c = CandidateBound::parse(candidate, beta)?;
                let region: Region = region.parse()?;
                let r = certify_grid(&c, beta, *resolution, region)?;
                ("certify", r.passed, to_value(&r)?, None)
            }
        }
        Command::Fourier { function, n, p, t, d } => {
            let (f, label) = parse_function(function, *n)?;
            let stats = spectral_stats(&f);
            let fbound = if f.is_boolean() { Some(fbound_ratio(&f, *p)?) } else { None };
            let stability = noise_stability_suite(&f, *p, 2.0, *t, *d)?;
            let identity_error = if f.dim().get() <= MAX_SEMIGROUP_DIM {
                Some(check_semigroup_identity(&f, *t)?)
            } else {
                None
            };
            let passed = stability.hypercontractive_ok && identity_error.is_none_or(|e| e < IDENTITY_TOLERANCE);
            let result = json!({
                "function": label,
                "n": f.dim().get(),
                "spectral": stats,
                "fbound": fbound,
                "stability": stability,
                "semigroup_identity_error": identity_error,
            });
            ("fourier", passed, result, None)
        }
        Command::Talagrand { function, n, p, mode, samples, seed } => {
            let (f, label) = parse_function(function, *n)?;
            let mode = match mode.as_str() {
                "exact" => TalagrandMode::Exact,
                "monte_carlo" | "monte-carlo" => TalagrandMode::MonteCarlo { samples: *samples, seed: *seed },
                "auto" => TalagrandMode::Auto,
                other => return Err(Error::Parse(format!("unknown mode {other:?} (exact, monte_carlo, auto)"))),
            };
            let r = talagrand_df_norm(&f, *p, mode)?;
            ("talagrand", true, json!({ "function": label, "n": f.dim().get(), "norm": r }), None)
        }
        Command::Partition { n, beta, k } => {
            let d = dim(*n)?;
            let opt = min_partition_functional(d, *beta, *k)?;
            let check = separation_lower_bound_check(&opt.witness, *beta, *k)?;
            let passed = check.margin >= -1e-12;
            ("partition", passed, json!({ "optimum": opt, "separation": check }), None)
        }
        Command::Appendix { beta, n_max, odd_n_max, k } => {
            let decay = decay_table(*beta, *n_max)?;
            let ratios = ball_partition_ratios(*beta, *k, *odd_n_max)?;
            let counts = (1..=*odd_n_max)
                .step_by(2)
                .map(ball_partition_counts)
                .collect::<Result<Vec<_>>>()?;
            let passed = counts.iter().all(|c| c.half_measure);
            let small_ball = if *odd_n_max >= 3 {
                Some(separation_lower_bound_check(&ball_partition(dim(3)?)?, *beta, *k)?)
            } else {
                None
            };
            let mut t = Table::new(&["table", "n", "beta", "k", "value", "exact"]);
            for r in &decay.rows {
                t.push(vec!["decay".into(), r.n.to_string(), beta.to_string(), String::new(), r.value.to_string(), r.sphere_size.clone()]);
            }
            for (r, c) in ratios.iter().zip(&counts) {
                t.push(vec!["partition_ratio".into(), r.n.to_string(), beta.to_string(), k.to_string(), r.ratio.to_string(), c.w_size.clone()]);
            }
            let result = json!({
                "decay": decay,
                "partition_ratios": ratios,
                "ball_counts": counts,
                "ball_partition_n3": small_ball,
            });
            ("appendix", passed, result, Some(t))
        }
        Command::Constants => {
            let c = reference_constants();
            let mut t = Table::new(&["name", "expression", "value", "printed", "matches"]);
            for x in &c.constants {
                t.push(vec![
                    x.name.clone(),
                    x.expression.clone(),
                    x.value.to_string(),
                    x.printed.clone().unwrap_or_default(),
                    x.matches_printed.to_string(),
                ]);
            }
            ("constants", c.passed, to_value(&c)?, Some(t))
        }
        Command::AllChecks => {
            let checks = all_checks();
            let passed = checks.iter().all(|c| c.passed);
            let mut t = Table::new(&["id", "name", "passed", "detail"]);
            for c in &checks {
                t.push(vec![c.id.to_string(), c.name.clone(), c.passed.to_string(), c.detail.clone()]);
            }
            ("all-checks", passed, to_value(&checks)?, Some(t))
        }
    };
    Ok(Report { schema_version: SCHEMA_VERSION, command: name.into(), config, passed, result, table })
}

/// `path,value` rows of every leaf of a JSON value.
fn flatten(prefix: &str, v: &Value, out: &mut Vec<Vec<String>>) {
    let join = |k: &str| if prefix.is_empty() { k.to_string() } else { format!("{prefix}.{k}") };
    match v {
        Value::Object(map) => map.iter().for_each(|(k, x)| flatten(&join(k), x, out)),
        Value::Array(items) => items.iter().enumerate().for_each(|(i, x)| flatten(&join(&i.to_string()), x, out)),
        Value::String(s) => out.push(vec![prefix.to_string(), s.clone()]),
        other => out.push(vec![prefix.to_string(), other.to_string()]),
    }
}

/// Serialises a report in the chosen format.
pub fn render(report: &Report, format: Format) -> Result<Vec<u8>> {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(report).map_err(|e| Error::Io(e.to_string()))?;
            s.push('\n');
            Ok(s.into_bytes())
        }
        Format::Csv => {
            let table = match &report.table {
                Some(t) => t.clone(),
                None => {
                    let mut rows = vec![
                        vec!["schema_version".into(), SCHEMA_VERSION.to_string()],
                        vec!["passed".into(), report.passed.to_string()],
                    ];
                    flatten("", &report.result, &mut rows);
                    Table { header: vec!["key".into(), "value".into()], rows }
                }
            };
            let mut w = csv::Writer::from_writer(Vec::new());
            let io = |e: csv::Error| Error::Io(e.to_string());
            w.write_record(&table.header).map_err(io)?;
            for r in &table.rows {
                w.write_record(r).map_err(io)?;
            }
            w.into_inner().map_err(|e| Error::Io(e.to_string()))
        }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::ResourceRefusal(_) => EXIT_REFUSED,
        _ => EXIT_USAGE,
    }
}

/// Parses `args`, runs the command and writes the report. Returns the
/// process exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    let report = match execute(&cli.command, &cli.cache_dir) {
        Ok(r) => r,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return exit_code(&e);
        }
    };
    if report.command == "all-checks" {
        if let Ok(checks) = serde_json::from_value::<Vec<Check>>(report.result.clone()) {
            for c in &checks {
                let _ = writeln!(err, "{}", c.line());
            }
        }
    }
    let bytes = match render(&report, cli.format) {
        Ok(b) => b,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_USAGE;
        }
    };
    let written = match &cli.output {
        Some(path) => std::fs::write(path, &bytes).map_err(Error::from),
        None => out.write_all(&bytes).map_err(Error::from),
    };
    if let Err(e) = written {
        let _ = writeln!(err, "error: {e}");
        return EXIT_USAGE;
    }
    if report.passed {
        EXIT_OK
    } else {
        EXIT_CHECK_FAILED
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(std::iter::once("hypercube-iso").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn dyadic_parsing() {
        let d = Dimension::new(3).unwrap();
        assert_eq!(parse_dyadic("3/8", d).unwrap(), 3);
        assert_eq!(parse_dyadic("1/2", d).unwrap(), 4);
        assert_eq!(parse_dyadic("0.375", d).unwrap(), 3);
        assert_eq!(parse_dyadic("1", d).unwrap(), 8);
        let e = parse_dyadic("1/3", d).unwrap_err().to_string();
        assert!(e.contains("m/2^3"), "{e}");
        assert!(parse_dyadic("1/16", d).is_err());
        assert!(parse_dyadic("9/8", d).is_err());
        assert!(parse_dyadic("-1/8", d).is_err());
        assert!(parse_dyadic("1/0", d).is_err());
    }

    #[test]
    fn harper_csv_has_nine_rows_at_three() {
        let (code, out, _) = run_args(&["--format", "csv", "harper", "--n", "3"]);
        assert_eq!(code, 0);
        let lines: Vec<_> = out.lines().collect();
        assert_eq!(lines[0], "n,m,numerator,value");
        assert_eq!(lines.len(), 10);
        assert_eq!(lines[4], "3,3,5,0.625");
    }

    #[test]
    fn malformed_t_exits_two() {
        let (code, _, err) = run_args(&["minimize", "--n", "3", "--t", "1/3", "--beta", "1", "--no-cache"]);
        assert_eq!(code, EXIT_USAGE);
        assert!(err.contains("dyadic"), "{err}");
    }

    #[test]
    fn refusal_exits_three() {
        let (code, _, _) = run_args(&["talagrand", "parity", "--n", "14", "--mode", "exact"]);
        assert_eq!(code, EXIT_REFUSED);
    }

    #[test]
    fn failing_check_exits_one() {
        let (code, out, _) =
            run_args(&["certify", "--candidate", "quadratic:2", "--beta", "0.5", "--resolution", "256"]);
        assert_eq!(code, EXIT_CHECK_FAILED);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["passed"], false);
        assert_eq!(v["result"]["violation"], true);
    }

    #[test]
    fn reports_are_reproducible() {
        let args = ["fourier", "majority", "--n", "5", "--p", "1.5", "--t", "0.3", "--d", "2"];
        let (code, a, _) = run_args(&args);
        let (_, b, _) = run_args(&args);
        assert_eq!(code, 0);
        assert_eq!(a, b);
        let v: Value = serde_json::from_str(&a).unwrap();
        assert_eq!(v["schema_version"], 1);
        assert_eq!(v["config"]["command"], "fourier");
        assert_eq!(v["config"]["n"], 5);
    }

    #[test]
    fn cube_set_functions_are_signed_indicators() {
        let (code, out, _) = run_args(&["talagrand", "n=2:05", "--p", "2", "--mode", "exact"]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        // {0, 2} = {bit 0 clear}: the function is the dictator x_0 up to sign.
        assert_eq!(v["result"]["norm"]["value"], 1.0);
        let (code, _, _) = run_args(&["talagrand", "n=2:05", "--n", "3"]);
        assert_eq!(code, EXIT_USAGE);
    }
}
