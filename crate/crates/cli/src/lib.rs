//! Command-line front end: `expand`, `u5`, `verify` and `cusps`.

pub mod cache;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use congruence_core::etaq::named;
use congruence_core::series::Series;
use congruence_core::specialfns::{c_values_known, c_values, c_values_uncached, named_series, prime_c_values};
use congruence_core::verify::{run_suite, CheckKind, VerifyConfig};
use congruence_core::QSeries;
use serde_json::json;

use cache::Cache;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

pub const CACHE_ENV: &str = "CONGRUENCE_CACHE_DIR";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ReportFormat {
    Json,
    Text,
}

#[derive(Debug, Parser)]
#[command(name = "congruence", version, about = "Exact checks of the c(n) congruences modulo powers of 5")]
struct Cli {
    /// Truncation order; at least 50 for `verify`
    #[arg(long, global = true, default_value_t = 200)]
    trunc: i64,
    /// Largest alpha for the main theorem and the congruence family
    #[arg(long, global = true, default_value_t = 4)]
    alpha_max: u32,
    #[arg(long, global = true, value_enum, default_value_t = ReportFormat::Json)]
    report: ReportFormat,
    /// Seed for the random mapping trials
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    /// Largest n for the congruences of h-values
    #[arg(long, global = true, default_value_t = 25)]
    n_max: i64,
    /// Random trials per mapping property
    #[arg(long, global = true, default_value_t = 50)]
    trials: usize,
    /// Series cache directory (overridden by CONGRUENCE_CACHE_DIR)
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the q-expansion of z, x, y, rho, t, F, c or L0..L9
    Expand { name: String },
    /// Print U5 applied to a named series
    U5 { name: String },
    /// Run one check, or `all`
    Verify { check: String },
    /// Print the orders at the cusps of a named eta quotient
    Cusps { name: String },
}

/// Resolved settings.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Config {
    pub trunc: i64,
    pub alpha_max: u32,
    pub cache_dir: Option<PathBuf>,
    pub report_format: ReportFormat,
    pub seed: u64,
}

enum Failure {
    Usage(String),
    Verification(String),
    Internal(String),
}

impl From<congruence_core::Error> for Failure {
    fn from(e: congruence_core::Error) -> Self {
        Failure::Internal(e.to_string())
    }
}

/// Parses `argv` (program name first), runs the command and returns the exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    let config = Config {
        trunc: cli.trunc,
        alpha_max: cli.alpha_max,
        cache_dir: std::env::var_os(CACHE_ENV).map(PathBuf::from).or(cli.cache_dir.clone()),
        report_format: cli.report,
        seed: cli.seed,
    };
    let outcome = match &cli.command {
        Command::Expand { name } => expand(&config, name, false),
        Command::U5 { name } => expand(&config, name, true),
        Command::Verify { check } => verify(&config, &cli, check),
        Command::Cusps { name } => cusps(&config, name),
    };
    match outcome {
        Ok(code) => code,
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            EXIT_USAGE
        }
        Err(Failure::Verification(m)) => {
            eprintln!("verification failed: {m}");
            EXIT_FAILED
        }
        Err(Failure::Internal(m)) => {
            eprintln!("internal error: {m}");
            EXIT_INTERNAL
        }
    }
}

fn compute_named(name: &str, precision: i64) -> Result<QSeries, Failure> {
    match named_series(name, precision) {
        None => Err(Failure::Usage(format!("unknown series `{name}`"))),
        Some(r) => Ok(r?),
    }
}

fn named_cached(config: &Config, name: &str, precision: i64) -> Result<QSeries, Failure> {
    let cache = config.cache_dir.as_ref().map(Cache::new);
    if let Some(cache) = &cache {
        if let Some(s) = cache.load(name, precision, |p| named_series(name, p).and_then(|r| r.ok())) {
            return Ok(s);
        }
    }
    let s = compute_named(name, precision)?;
    if let Some(cache) = &cache {
        cache.store(name, &s);
    }
    Ok(s)
}

fn print_series(config: &Config, label: &str, s: &QSeries) {
    match config.report_format {
        ReportFormat::Json => {
            let coeffs: Vec<String> = s.coeffs().iter().map(|c| c.to_string()).collect();
            let j = json!({ "name": label, "offset": s.offset(), "precision": s.precision(), "coefficients": coeffs });
            emit(&serde_json::to_string_pretty(&j).expect("json"));
        }
        ReportFormat::Text => emit(&format!("{label} = {s}")),
    }
}

/// Writes one block to stdout; a closed pipe is not an error.
fn emit(text: &str) {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "{text}");
}

fn expand(config: &Config, name: &str, apply_u5: bool) -> Result<i32, Failure> {
    if config.trunc < 1 {
        return Err(Failure::Usage("--trunc must be positive".into()));
    }
    if apply_u5 {
        let s = named_cached(config, name, config.trunc * 5)?.u5();
        print_series(config, &format!("U5({name})"), &s);
    } else {
        let s = named_cached(config, name, config.trunc)?;
        print_series(config, name, &s);
    }
    Ok(EXIT_OK)
}

/// Loads the largest sound cached run of `c` into the memo.
fn prime_c_from_cache(cache: &Cache) -> usize {
    let Some(len) = cache.largest("c") else { return 0 };
    let loaded = cache.load("c", len, |p| Some(Series::from_coeffs(0, c_values_uncached(p as usize), p)));
    match loaded {
        Some(s) if s.offset() == 0 => {
            prime_c_values(s.to_dense());
            len as usize
        }
        _ => 0,
    }
}

fn verify(config: &Config, cli: &Cli, check: &str) -> Result<i32, Failure> {
    let kinds: Vec<CheckKind> = if check == "all" {
        CheckKind::ALL.to_vec()
    } else {
        vec![check.parse().map_err(Failure::Usage)?]
    };
    if config.trunc < 50 {
        return Err(Failure::Usage("--trunc must be at least 50".into()));
    }
    if config.alpha_max < 1 {
        return Err(Failure::Usage("--alpha-max must be at least 1".into()));
    }
    let cache = config.cache_dir.as_ref().map(Cache::new);
    let primed = cache.as_ref().map_or(0, prime_c_from_cache);

    let cfg = VerifyConfig {
        trunc: config.trunc,
        alpha_max: config.alpha_max,
        n_max: cli.n_max,
        trials: cli.trials,
        seed: config.seed,
        ..VerifyConfig::default()
    };
    let suite = run_suite(check, &kinds, &cfg);

    if let Some(cache) = &cache {
        let known = c_values_known();
        if known > primed {
            cache.store("c", &Series::from_coeffs(0, c_values(known), known as i64));
        }
    }
    match config.report_format {
        ReportFormat::Json => emit(&serde_json::to_string_pretty(&suite.to_json()).expect("json")),
        ReportFormat::Text => emit(suite.to_text().trim_end()),
    }
    Ok(if suite.all_pass { EXIT_OK } else { EXIT_FAILED })
}

fn cusps(config: &Config, name: &str) -> Result<i32, Failure> {
    let f = named::by_name(name).ok_or_else(|| Failure::Usage(format!("unknown eta quotient `{name}`")))?;
    let table = f.order_table(name).map_err(|e| Failure::Verification(e.to_string()))?;
    match config.report_format {
        ReportFormat::Json => emit(&serde_json::to_string_pretty(&table.to_json()).expect("json")),
        ReportFormat::Text => emit(table.to_string().trim_end()),
    }
    Ok(EXIT_OK)
}
