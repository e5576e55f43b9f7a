//! Command implementations behind the `ratemat` binary.
//!
//! Exit codes: 0 ok, 2 input error, 3 simulated path leaves a state
//! unvisited, 4 a state has zero duration, 5 convergence check failed.

use std::fs;
use std::path::{Path, PathBuf};

use ndarray::Array1;
use serde::Deserialize;

use crate::continuous::{imprecise_estimate, ml_estimate, posterior_mean, GammaHyper};
use crate::convergence::{dyadic_levels, theorem1_report};
use crate::error::Error;
use crate::lower::{lower_rate_apply, upper_rate_apply, Gamble};
use crate::matrix::{matrix_from_rows, validate_rate_matrix, StateSpace};
use crate::path::{discrete_stats, discretize, sufficient_stats, PathFile, SamplePath};
use crate::report::{to_json, EstimateKind, EstimateReport, OperatorReport, StatsReport};
use crate::simulate::{simulate, SimConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_UNVISITED: i32 = 3;
pub const EXIT_ZERO_DURATION: i32 = 4;
pub const EXIT_FAIL: i32 = 5;

/// Environment variable capping the worker threads used by sweeps.
pub const THREADS_ENV: &str = "RATEMAT_THREADS";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Simulate,
    Stats,
    Estimate,
    Convergence,
    LowerOp,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Mode {
    #[default]
    Ml,
    Bayes,
    Imprecise,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Json,
    Csv,
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub command: Command,
    /// Path file, or the model file for `simulate`.
    pub input: PathBuf,
    pub s: f64,
    /// Grid levels; `None` means the command default.
    pub m_values: Option<Vec<usize>>,
    pub seed: Option<u64>,
    pub mode: Mode,
    /// Gamble for `lower-op`, as a JSON array.
    pub h: Option<String>,
    pub format: Format,
    pub tol: f64,
    /// Gamma prior for `estimate --mode bayes`; absent means `alpha = beta = 0`.
    pub prior: Option<PathBuf>,
}

impl RunConfig {
    pub fn new(command: Command, input: impl Into<PathBuf>) -> Self {
        Self {
            command,
            input: input.into(),
            s: 1.0,
            m_values: None,
            seed: None,
            mode: Mode::default(),
            h: None,
            format: Format::default(),
            tol: 1e-3,
            prior: None,
        }
    }
}

/// Successful command output. `code` may still be non-zero (3 or 5).
#[derive(Debug, Clone, PartialEq)]
pub struct CmdOutput {
    pub text: String,
    pub code: i32,
    pub message: Option<String>,
}

impl CmdOutput {
    fn ok(text: String) -> Self {
        Self { text, code: EXIT_OK, message: None }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::ZeroDurationState { .. } => EXIT_ZERO_DURATION,
            _ => EXIT_INPUT,
        };
        Self { code, message: e.to_string() }
    }
}

fn input_error(msg: impl Into<String>) -> CliError {
    CliError { code: EXIT_INPUT, message: msg.into() }
}

/// Parses a comma-separated list of grid levels. Empty lists are rejected.
pub fn parse_m_values(s: &str) -> Result<Vec<usize>, CliError> {
    let values = s
        .split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| match t.parse::<usize>() {
            Ok(m) if m > 0 => Ok(m),
            _ => Err(input_error(format!("invalid m value {t:?}"))),
        })
        .collect::<Result<Vec<_>, _>>()?;
    if values.is_empty() {
        return Err(input_error("m list is empty"));
    }
    Ok(values)
}

/// Sizes the global rayon pool from `RATEMAT_THREADS` when set.
pub fn configure_threads() -> Result<(), CliError> {
    if let Ok(v) = std::env::var(THREADS_ENV) {
        let n: usize = v
            .parse()
            .ok()
            .filter(|n| *n > 0)
            .ok_or_else(|| input_error(format!("{THREADS_ENV} must be a positive integer, got {v:?}")))?;
        // a pool that is already initialised keeps its size
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    Ok(())
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, CliError> {
    let text = fs::read_to_string(path).map_err(|e| input_error(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| input_error(format!("{}: {e}", path.display())))
}

fn read_path(path: &Path) -> Result<SamplePath, CliError> {
    let file: PathFile = read_json(path)?;
    Ok(SamplePath::from_file(&file)?)
}

fn json(value: &impl serde::Serialize) -> Result<String, CliError> {
    to_json(value).map_err(|e| input_error(e.to_string()))
}

/// Input of `simulate`:
/// `{"states": [...], "q": [[...]], "initial": [...], "t_max": 10.0, "seed": 1}`.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelFile {
    pub states: Vec<String>,
    pub q: Vec<Vec<f64>>,
    pub initial: Vec<f64>,
    pub t_max: f64,
    #[serde(default)]
    pub seed: Option<u64>,
}

/// Gamma prior file: `{"alpha": [[...]], "beta": [...]}`.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PriorFile {
    pub alpha: Vec<Vec<f64>>,
    pub beta: Vec<f64>,
}

pub fn run(cfg: &RunConfig) -> Result<CmdOutput, CliError> {
    match cfg.command {
        Command::Simulate => cmd_simulate(cfg),
        Command::Stats => cmd_stats(cfg),
        Command::Estimate => cmd_estimate(cfg),
        Command::Convergence => cmd_convergence(cfg),
        Command::LowerOp => cmd_lower_op(cfg),
    }
}

pub fn cmd_simulate(cfg: &RunConfig) -> Result<CmdOutput, CliError> {
    let model: ModelFile = read_json(&cfg.input)?;
    let space = StateSpace::new(model.states)?;
    let q = validate_rate_matrix(matrix_from_rows(&model.q)?)?;
    let seed = cfg.seed.or(model.seed).unwrap_or(0);
    let sim = SimConfig::new(space, q, model.initial, model.t_max, seed)?;
    let out = simulate(&sim);
    let text = json(&out.path.to_file())?;
    if out.unvisited.is_empty() {
        return Ok(CmdOutput::ok(text));
    }
    let labels: Vec<&str> = out.unvisited.iter().map(|&x| out.path.space().label(x)).collect();
    Ok(CmdOutput {
        text,
        code: EXIT_UNVISITED,
        message: Some(format!("unvisited states: {}", labels.join(", "))),
    })
}

pub fn cmd_stats(cfg: &RunConfig) -> Result<CmdOutput, CliError> {
    let path = read_path(&cfg.input)?;
    let stats = sufficient_stats(&path);
    Ok(CmdOutput::ok(json(&StatsReport::new(path.space(), &stats))?))
}

pub fn cmd_estimate(cfg: &RunConfig) -> Result<CmdOutput, CliError> {
    let path = read_path(&cfg.input)?;
    let space = path.space();

    if let Some(ms) = &cfg.m_values {
        let [m] = ms.as_slice() else {
            return Err(input_error("estimate takes a single m value"));
        };
        let s = match cfg.mode {
            Mode::Ml => 0.0,
            Mode::Imprecise => cfg.s,
            Mode::Bayes => return Err(input_error("discrete-time estimates support modes ml and imprecise")),
        };
        if !(s.is_finite() && s >= 0.0) {
            return Err(Error::NegativeS(s).into());
        }
        let dstats = discrete_stats(&discretize(&path, *m)?);
        return Ok(CmdOutput::ok(json(&EstimateReport::discrete(space, &dstats, s))?));
    }

    let stats = sufficient_stats(&path);
    let report = match cfg.mode {
        Mode::Ml => EstimateReport::point(EstimateKind::Ml, space, &ml_estimate(&stats), &stats),
        Mode::Bayes => {
            let hyper = match &cfg.prior {
                Some(p) => {
                    let prior: PriorFile = read_json(p)?;
                    GammaHyper::new(matrix_from_rows(&prior.alpha)?, Array1::from(prior.beta))?
                }
                None => GammaHyper::zero(space.len()),
            };
            EstimateReport::point(EstimateKind::Bayes, space, &posterior_mean(&hyper, &stats)?, &stats)
        }
        Mode::Imprecise => EstimateReport::imprecise(space, &imprecise_estimate(&stats, cfg.s)?),
    };
    Ok(CmdOutput::ok(json(&report)?))
}

pub fn cmd_convergence(cfg: &RunConfig) -> Result<CmdOutput, CliError> {
    let path = read_path(&cfg.input)?;
    let m_values = cfg.m_values.clone().unwrap_or_else(|| dyadic_levels(3, 16));
    if m_values.is_empty() {
        return Err(input_error("m list is empty"));
    }
    let id = cfg.input.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    let report = theorem1_report(&path, &id, cfg.s, &m_values, cfg.tol)?;
    let text = match cfg.format {
        Format::Json => json(&report)?,
        Format::Csv => report.to_csv(),
    };
    if report.pass {
        Ok(CmdOutput::ok(text))
    } else {
        Ok(CmdOutput { text, code: EXIT_FAIL, message: Some("convergence check FAILED".into()) })
    }
}

pub fn cmd_lower_op(cfg: &RunConfig) -> Result<CmdOutput, CliError> {
    let path = read_path(&cfg.input)?;
    let raw = cfg.h.as_deref().ok_or_else(|| input_error("--h is required"))?;
    let values: Vec<f64> = serde_json::from_str(raw).map_err(|e| input_error(format!("--h: {e}")))?;
    let h = Gamble::new(Array1::from(values))?;
    let set = imprecise_estimate(&sufficient_stats(&path), cfg.s)?;
    let report = OperatorReport {
        lower: lower_rate_apply(&set, &h)?.to_vec(),
        upper: upper_rate_apply(&set, &h)?.to_vec(),
    };
    Ok(CmdOutput::ok(json(&report)?))
}
