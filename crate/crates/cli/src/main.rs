//! `k3brauer`: random fourfolds, Picard rank certificates and the
//! Brauer-Manin verdict, one stage per subcommand.
//!
//! Every subcommand prints one JSON document on stdout. Logs go to stderr
//! (`RUST_LOG` or `-v`).

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::Value;
use thiserror::Error;

use k3_core::brauer::{AlgebraText, BrauerError};
use k3_core::counting::{
    complete_charpoly, count_series, newton_coefficients, picard_upper_bound, traces_from_counts, CountCache,
    CountConfig, CountError, CountSeries, PicardBound, Strategy, WeilPolynomial,
};
use k3_core::geometry::{
    complete_squares, crt_lift, fiber_conic, fourfold_equation, k3_from_fourfold, GeometryError, K3Surface,
    QuadricBundleData,
};
use k3_core::lattices::LatticeError;
use k3_core::mpoly::{default_names, to_canonical};
use k3_core::pipeline::{
    assemble, certify, fixture_data, generate, verify, CertifyConfig, CertifyStatus, Generated,
    PipelineError, PipelineRecord, PrimeRecord, DEFAULT_HEIGHT, DEFAULT_RETRY_CAP,
};

#[derive(Parser)]
#[command(name = "k3brauer", version, about = "Degree-2 K3 surfaces with a Brauer-Manin obstruction")]
struct Cli {
    /// Worker threads for counting and point search.
    #[arg(long, global = true, env = "K3_WORKERS")]
    workers: Option<usize>,
    /// JSON file of cached point counts, read and extended.
    #[arg(long, global = true, env = "K3_CACHE")]
    cache: Option<PathBuf>,
    /// More logging on stderr (repeatable).
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    verbose: u8,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum StrategyArg {
    Direct,
    GaloisOrbits,
}

impl From<StrategyArg> for Strategy {
    fn from(s: StrategyArg) -> Self {
        match s {
            StrategyArg::Direct => Strategy::Direct,
            StrategyArg::GaloisOrbits => Strategy::GaloisOrbits,
        }
    }
}

#[derive(clap::Args)]
struct Budget {
    /// Count `N_1..N_max_n` (default 12, or 10 at p = 3).
    #[arg(long)]
    max_n: Option<usize>,
    /// Count through n = 12 at p = 3.
    #[arg(long)]
    long_run: bool,
    #[arg(long, value_enum, default_value = "galois-orbits")]
    strategy: StrategyArg,
    /// Give up on a single count after this many seconds.
    #[arg(long)]
    time_limit: Option<u64>,
}

#[derive(Subcommand)]
enum Command {
    /// Draw fourfold data over F_p until it is smooth.
    Generate {
        #[arg(long)]
        prime: u32,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_RETRY_CAP)]
        retry_cap: u64,
    },
    /// Lower-bound curve, point counts and Picard upper bound at one prime.
    Certify {
        /// Fourfold data or `generate` output; the bundled example when absent.
        #[arg(long)]
        record: Option<PathBuf>,
        #[arg(long)]
        prime: Option<u32>,
        #[command(flatten)]
        budget: Budget,
        /// Degree of the extension searched for tangent conics (p = 3).
        #[arg(long, default_value_t = 1)]
        conic_degree: usize,
    },
    /// Lift two certified records to Q and decide the obstruction.
    Assemble {
        /// The p = 2 record, then the p = 3 record.
        #[arg(long, num_args = 2, required = true)]
        record: Vec<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_HEIGHT)]
        height: u32,
    },
    /// Point counts only.
    Count {
        /// Fourfold data, `generate` output or a surface; the bundled example when absent.
        #[arg(long)]
        record: Option<PathBuf>,
        #[arg(long)]
        prime: Option<u32>,
        #[command(flatten)]
        budget: Budget,
    },
    /// Characteristic polynomial and Picard bound from stored counts.
    Charpoly {
        /// A `count` or `certify` output.
        #[arg(long)]
        record: PathBuf,
        #[arg(long)]
        max_n: Option<usize>,
    },
    /// Surface and quaternion algebra of fourfold data over Q.
    Brauer {
        /// Integral fourfold data or an `assemble` output; the lifted bundled example when absent.
        #[arg(long)]
        record: Option<PathBuf>,
    },
    /// Recompute the verdict stored in an `assemble` output.
    Verify {
        #[arg(long)]
        record: PathBuf,
    },
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}: {1}")]
    Io(PathBuf, std::io::Error),
    #[error("{0}: {1}")]
    Json(String, serde_json::Error),
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Pipeline(#[from] PipelineError),
    #[error("certification stopped: {0:?}")]
    Status(CertifyStatus),
    #[error("no rational point found up to height {0}")]
    NoPoint(u32),
    #[error("recomputed verdict differs from the stored one")]
    Mismatch,
}

impl From<GeometryError> for CliError {
    fn from(e: GeometryError) -> Self {
        CliError::Pipeline(e.into())
    }
}

impl From<CountError> for CliError {
    fn from(e: CountError) -> Self {
        CliError::Pipeline(e.into())
    }
}

impl From<BrauerError> for CliError {
    fn from(e: BrauerError) -> Self {
        CliError::Pipeline(e.into())
    }
}

impl From<LatticeError> for CliError {
    fn from(e: LatticeError) -> Self {
        CliError::Pipeline(e.into())
    }
}

impl CliError {
    /// One code per error family; clap uses 2 for bad arguments.
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Io(..) | CliError::Json(..) => 3,
            CliError::Usage(_) => 4,
            CliError::Pipeline(e) => match e {
                PipelineError::UnsupportedPrime(_) => 4,
                PipelineError::RetryCapExceeded(_) => 5,
                PipelineError::Geometry(_) => 6,
                PipelineError::Count(_) => 7,
                PipelineError::Lattice(_) => 8,
                PipelineError::Brauer(_) => 9,
                PipelineError::NotCertified(_) => 10,
            },
            CliError::Status(CertifyStatus::NoLowerBound) => 11,
            CliError::Status(CertifyStatus::NeedsMoreCounts) => 12,
            CliError::Status(_) => 13,
            CliError::NoPoint(_) => 14,
            CliError::Mismatch => 15,
        }
    }
}

fn read_json(path: &Path) -> Result<Value, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(path.to_path_buf(), e))?;
    serde_json::from_str(&text).map_err(|e| CliError::Json(path.display().to_string(), e))
}

fn decode<T: serde::de::DeserializeOwned>(v: Value, what: &str) -> Result<T, CliError> {
    serde_json::from_value(v).map_err(|e| CliError::Json(what.to_string(), e))
}

fn emit<T: Serialize>(value: &T) -> Result<(), CliError> {
    let text = serde_json::to_string_pretty(value).map_err(|e| CliError::Json("output".into(), e))?;
    println!("{text}");
    Ok(())
}

/// Fourfold data from a file (bare or wrapped in a `generate`/`certify`
/// output) or the bundled example at `prime`.
fn load_data(record: Option<&Path>, prime: Option<u32>) -> Result<QuadricBundleData, CliError> {
    let data = match record {
        Some(path) => {
            let mut v = read_json(path)?;
            if let Some(inner) = v.get_mut("data") {
                v = inner.take();
            }
            decode::<QuadricBundleData>(v, &path.display().to_string())?
        }
        None => {
            let p = prime.ok_or_else(|| CliError::Usage("give --record or --prime".into()))?;
            fixture_data(p)?
        }
    };
    if let Some(p) = prime {
        if data.modulus() != p {
            return Err(CliError::Usage(format!("record is over F_{}, not F_{p}", data.modulus())));
        }
    }
    Ok(data)
}

fn certify_config(p: u32, budget: &Budget, workers: usize, cache: Option<PathBuf>) -> CertifyConfig {
    let mut cfg = CertifyConfig::for_prime(p, budget.long_run);
    if let Some(n) = budget.max_n {
        cfg.max_n = n;
    }
    cfg.workers = workers;
    cfg.cache = cache;
    cfg.strategy = budget.strategy.into();
    cfg.time_limit = budget.time_limit.map(Duration::from_secs);
    cfg
}

#[derive(Serialize)]
struct CharpolyReport {
    p: u32,
    coefficients: Vec<String>,
    charpoly: Option<WeilPolynomial>,
    bound: Option<PicardBound>,
    note: Option<String>,
}

#[derive(Serialize)]
struct BrauerReport {
    fourfold: String,
    surface: K3Surface,
    sextic: String,
    algebra: AlgebraText,
}

#[derive(Serialize)]
struct VerifyReport {
    matches: bool,
    verdict: k3_core::brauer::VerdictRecord,
}

fn run(cli: Cli) -> Result<(), CliError> {
    let workers = cli.workers.unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
    match cli.command {
        Command::Generate { prime, seed, retry_cap } => {
            let g: Generated = generate(prime, seed, retry_cap)?;
            emit(&g)
        }
        Command::Certify { record, prime, budget, conic_degree } => {
            let data = load_data(record.as_deref(), prime)?;
            let mut cfg = certify_config(data.modulus(), &budget, workers, cli.cache);
            cfg.conic_degree = conic_degree;
            let r = certify(&data, &cfg)?;
            emit(&r)?;
            match r.status {
                CertifyStatus::Certified => Ok(()),
                s => Err(CliError::Status(s)),
            }
        }
        Command::Assemble { record, height } => {
            let r2: PrimeRecord = decode(read_json(&record[0])?, &record[0].display().to_string())?;
            let r3: PrimeRecord = decode(read_json(&record[1])?, &record[1].display().to_string())?;
            let rec = assemble(&r2, &r3, height, workers)?;
            emit(&rec)?;
            match rec.verdict {
                Some(_) => Ok(()),
                None => Err(CliError::NoPoint(height)),
            }
        }
        Command::Count { record, prime, budget } => {
            let surface = match &record {
                Some(path) => {
                    let v = read_json(path)?;
                    if v.get("alpha").is_some() && v.get("data").is_none() {
                        decode::<K3Surface>(v, &path.display().to_string())?
                    } else {
                        k3_from_fourfold(&load_data(Some(path), prime)?)?
                    }
                }
                None => k3_from_fourfold(&load_data(None, prime)?)?,
            };
            let p = surface.modulus();
            let cfg = certify_config(p, &budget, workers, cli.cache);
            let mut cache = cfg.cache.as_deref().map(CountCache::open).transpose()?;
            let count_cfg = CountConfig { workers, max_points: None, time_limit: cfg.time_limit, strategy: cfg.strategy };
            let series = count_series(&surface, cfg.max_n, &count_cfg, cache.as_mut())?;
            emit(&series)
        }
        Command::Charpoly { record, max_n } => {
            let mut v = read_json(&record)?;
            if let Some(inner) = v.get_mut("counts").filter(|c| c.get("counts").is_some()) {
                v = inner.take();
            }
            let series: CountSeries = decode(v, &record.display().to_string())?;
            let max = max_n.unwrap_or_else(|| (1..).take_while(|n| series.counts.contains_key(n)).count());
            let coefficients = newton_coefficients(&traces_from_counts(&series, max)?)?;
            let (charpoly, bound, note) = if coefficients.len() >= 12 {
                match complete_charpoly(&coefficients, series.p) {
                    Ok(w) => {
                        let b = picard_upper_bound(&w);
                        (Some(w), Some(b), None)
                    }
                    Err(CountError::Ambiguous(msg)) => (None, None, Some(msg)),
                    Err(e) => return Err(e.into()),
                }
            } else {
                (None, None, Some(format!("{} counts; twelve are needed", coefficients.len())))
            };
            let report = CharpolyReport {
                p: series.p,
                coefficients: coefficients.iter().map(|c| c.to_string()).collect(),
                charpoly,
                bound,
                note,
            };
            emit(&report)?;
            if report.bound.is_none() {
                return Err(CliError::Status(CertifyStatus::NeedsMoreCounts));
            }
            Ok(())
        }
        Command::Brauer { record } => {
            let data = match &record {
                Some(path) => load_data(Some(path), None)?,
                None => crt_lift(&fixture_data(2)?, &fixture_data(3)?)?,
            };
            if data.modulus() != 0 {
                return Err(CliError::Usage(format!("fourfold data over F_{}; integral data needed", data.modulus())));
            }
            let surface = k3_from_fourfold(&data)?;
            let algebra = complete_squares(&fiber_conic(&data))?.algebra.to_text();
            emit(&BrauerReport {
                fourfold: to_canonical(&fourfold_equation(&data), &default_names(6)),
                sextic: to_canonical(&surface.branch_sextic(), &default_names(3)),
                surface,
                algebra,
            })
        }
        Command::Verify { record } => {
            let rec: PipelineRecord = decode(read_json(&record)?, &record.display().to_string())?;
            let verdict = verify(&rec)?;
            let matches = rec.verdict.as_ref() == Some(&verdict);
            emit(&VerifyReport { matches, verdict })?;
            if matches {
                Ok(())
            } else {
                Err(CliError::Mismatch)
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let level = match cli.verbose {
        0 => "warn",
        1 => "info",
        _ => "debug",
    };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level)).init();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
