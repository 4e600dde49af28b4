//! Run configuration, experiment dispatch, reports and replay manifests,
//! plus the `arcb` command line.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Deserializer, Serialize};
use sha2::{Digest, Sha256};

use crate::algorithms::LearnerSpec;
use crate::error::{Error, Result};
use crate::fractal::{covering_number, dim_fm, dim_fm_oracle, trivial_dim_bound};
use crate::lab::{
    compress_check, expectation_bound_experiment, fractal_bound_experiment, limit_ratio_experiment, sgd_check,
    vc_check, BoundReport, LossSpec, RiskChoice, Setup, SgdCheckOptions,
};
use crate::limits::SolverLimits;
use crate::metric::{read_cloud_csv, Metric};
use crate::rademacher::{massart_bound, rademacher_exact, rademacher_mc, LossMatrix, PRNG_ID};
use crate::supersample::{Distribution, ThetaMode};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
#[value(rename_all = "kebab-case")]
pub enum Experiment {
    Arc,
    SgdCheck,
    CompressCheck,
    VcCheck,
    FractalCheck,
    LimitTrend,
}

impl Experiment {
    pub fn name(self) -> &'static str {
        match self {
            Experiment::Arc => "arc",
            Experiment::SgdCheck => "sgd-check",
            Experiment::CompressCheck => "compress-check",
            Experiment::VcCheck => "vc-check",
            Experiment::FractalCheck => "fractal-check",
            Experiment::LimitTrend => "limit-trend",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

/// Distribution plus an optional seed for the supersample draws.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DistConfig {
    #[serde(flatten)]
    pub dist: Distribution,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

impl<'de> Deserialize<'de> for DistConfig {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let mut map = serde_json::Map::deserialize(d)?;
        let seed = match map.remove("seed") {
            None => None,
            Some(v) => Some(v.as_u64().ok_or_else(|| D::Error::custom("seed must be a nonnegative integer"))?),
        };
        if let Some(k) = map.keys().find(|k| *k != "dist" && *k != "params") {
            return Err(D::Error::custom(format!("unknown field `{k}`, expected dist, params or seed")));
        }
        let dist = Distribution::deserialize(serde_json::Value::Object(map)).map_err(D::Error::custom)?;
        Ok(Self { dist, seed })
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OutputConfig {
    pub path: Option<PathBuf>,
    pub format: Format,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CompressOptions {
    /// `(k, n)` pairs; empty means the configured learner and `n`.
    pub cases: Vec<(usize, usize)>,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct VcOptions {
    /// Sample sizes; empty means the configured `n`.
    pub n_grid: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct LimitOptions {
    pub n_grid: Vec<usize>,
    /// Radii for the box-counting slope; default `Δ/4, Δ/8, Δ/16`.
    pub eps_grid: Option<Vec<f64>>,
}

impl Default for LimitOptions {
    fn default() -> Self {
        Self {
            n_grid: (4..=18).step_by(2).collect(),
            eps_grid: None,
        }
    }
}

fn d_reps() -> usize {
    100
}
fn d_delta() -> f64 {
    0.05
}
fn d_margin() -> f64 {
    3.0
}
fn d_tol() -> f64 {
    1e-12
}
fn d_mode() -> ThetaMode {
    ThetaMode::Exact
}
fn d_mc() -> u64 {
    20_000
}

/// A complete, replayable description of one run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub experiment: Option<Experiment>,
    pub learner: LearnerSpec,
    #[serde(default)]
    pub loss: LossSpec,
    pub dist: DistConfig,
    pub n: usize,
    #[serde(default = "d_reps")]
    pub reps: usize,
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "d_delta")]
    pub delta: f64,
    /// Pass/fail margin in standard errors.
    #[serde(default = "d_margin")]
    pub margin: f64,
    #[serde(default)]
    pub metric: Metric,
    #[serde(default = "d_tol")]
    pub dedup_tol: f64,
    #[serde(default)]
    pub limits: SolverLimits,
    #[serde(default = "d_mode")]
    pub theta_mode: ThetaMode,
    #[serde(default)]
    pub risk: RiskChoice,
    #[serde(default = "d_mc")]
    pub mc_draws: u64,
    #[serde(default)]
    pub output: OutputConfig,
    #[serde(default)]
    pub sgd: SgdCheckOptions,
    #[serde(default)]
    pub compress: CompressOptions,
    #[serde(default)]
    pub vc: VcOptions,
    #[serde(default)]
    pub limit: LimitOptions,
}

fn cfg_err(field: &str, message: impl Into<String>) -> Error {
    Error::Config {
        field: field.into(),
        message: message.into(),
    }
}

/// Tagged enums buffer their content, so errors inside them stop at the
/// enum's own path. Narrows such a path by one key: the first key whose
/// removal clears the error or leaves only that key missing.
fn culprit_key(doc: &serde_json::Value, path: &str) -> Option<String> {
    let reparse = |d: &serde_json::Value| serde_json::from_value::<RunConfig>(d.clone()).err().map(|e| e.to_string());
    let pointer: String = path
        .split('.')
        .filter(|p| !p.is_empty() && *p != ".")
        .map(|p| format!("/{p}"))
        .collect();
    let obj = doc.pointer(&pointer)?.as_object()?;
    reparse(doc)?;
    obj.keys().find_map(|k| {
        let mut probe = doc.clone();
        probe.pointer_mut(&pointer)?.as_object_mut()?.remove(k);
        let blamed = match reparse(&probe) {
            None => true,
            Some(e) => e.starts_with(&format!("missing field `{k}`")),
        };
        blamed.then(|| k.clone())
    })
}

impl RunConfig {
    /// Parses JSON, reporting the path of the first offending field.
    pub fn from_json(text: &str) -> Result<Self> {
        let de = &mut serde_json::Deserializer::from_str(text);
        serde_path_to_error::deserialize(de).map_err(|e| {
            let mut path = e.path().to_string();
            let message = e.into_inner().to_string();
            if let Ok(doc) = serde_json::from_str::<serde_json::Value>(text) {
                if let Some(key) = culprit_key(&doc, &path) {
                    path = if path == "." { key } else { format!("{path}.{key}") };
                }
            }
            cfg_err(if path.is_empty() { "." } else { &path }, message)
        })
    }

    pub fn from_path(path: &Path) -> Result<Self> {
        Self::from_json(&fs::read_to_string(path)?)
    }

    /// Checks ranges and size limits.
    pub fn validate(&self) -> Result<()> {
        let lim = &self.limits;
        if self.n == 0 {
            return Err(cfg_err("n", "must be at least 1"));
        }
        if self.reps == 0 {
            return Err(cfg_err("reps", "must be at least 1"));
        }
        if !(self.delta > 0.0 && self.delta <= 1.0) {
            return Err(cfg_err("delta", format!("must lie in (0, 1], got {}", self.delta)));
        }
        if !(self.margin >= 0.0) {
            return Err(cfg_err("margin", "must be nonnegative"));
        }
        if !(self.dedup_tol >= 0.0) {
            return Err(cfg_err("dedup_tol", "must be nonnegative"));
        }
        if lim.exact_n_limit > 30 {
            return Err(cfg_err("limits.exact_n_limit", "at most 30 is supported"));
        }
        if lim.exact_limit > 64 {
            return Err(cfg_err("limits.exact_limit", "at most 64 is supported"));
        }
        if self.mc_draws < 2 {
            return Err(cfg_err("mc_draws", "must be at least 2"));
        }
        let exact = matches!(self.theta_mode, ThetaMode::Exact);
        let over = |n: usize| n > lim.exact_n_limit;
        let limit_msg = |n: usize| format!("n = {n} exceeds exact_n_limit = {} for exact enumeration", lim.exact_n_limit);
        match self.experiment {
            Some(Experiment::LimitTrend) => {}
            Some(Experiment::SgdCheck) => {
                if exact && over(self.n) {
                    return Err(cfg_err("n", limit_msg(self.n)));
                }
                if let Some(&n) = self.sgd.n_grid.iter().find(|&&n| over(n)) {
                    return Err(cfg_err("sgd.n_grid", limit_msg(n)));
                }
            }
            Some(Experiment::CompressCheck) => {
                if let Some(&(_, n)) = self.compress.cases.iter().find(|c| over(c.1)) {
                    return Err(cfg_err("compress.cases", limit_msg(n)));
                }
                if self.compress.cases.is_empty() && over(self.n) {
                    return Err(cfg_err("n", limit_msg(self.n)));
                }
            }
            Some(Experiment::VcCheck) => {
                if let Some(&n) = self.vc.n_grid.iter().find(|&&n| over(n)) {
                    return Err(cfg_err("vc.n_grid", limit_msg(n)));
                }
                if self.vc.n_grid.is_empty() && over(self.n) {
                    return Err(cfg_err("n", limit_msg(self.n)));
                }
            }
            _ => {
                if exact && over(self.n) {
                    return Err(cfg_err("n", limit_msg(self.n)));
                }
            }
        }
        if let ThetaMode::Sampled { m: 0, .. } = self.theta_mode {
            return Err(cfg_err("theta_mode.m", "must be at least 1"));
        }
        Ok(())
    }

    /// Builds the experiment setup.
    pub fn setup(&self) -> Result<Setup> {
        let mut s = Setup::new(self.learner.clone(), self.loss.clone(), self.dist.dist.clone(), self.n).map_err(
            |e| match e {
                Error::Config { .. } => e,
                other => cfg_err("learner", other.to_string()),
            },
        )?;
        s.reps = self.reps;
        s.seed = self.seed;
        s.data_seed = self.dist.seed;
        s.delta = self.delta;
        s.margin = self.margin;
        s.metric = self.metric;
        s.dedup_tol = self.dedup_tol;
        s.limits = self.limits;
        s.theta_mode = self.theta_mode;
        s.risk = self.risk;
        s.mc_draws = self.mc_draws;
        Ok(s)
    }

    /// SHA-256 of the canonical JSON form.
    pub fn hash(&self) -> String {
        let bytes = serde_json::to_vec(self).expect("config serializes");
        hex::encode(Sha256::digest(&bytes))
    }
}

/// Runs the configured experiment.
pub fn run_experiment(cfg: &RunConfig) -> Result<BoundReport> {
    let exp = cfg.experiment.ok_or_else(|| cfg_err("experiment", "missing"))?;
    cfg.validate()?;
    let setup = cfg.setup()?;
    match exp {
        Experiment::Arc => expectation_bound_experiment(&setup),
        Experiment::FractalCheck => fractal_bound_experiment(&setup).map(|(r, _)| r),
        Experiment::LimitTrend => limit_ratio_experiment(&setup, &cfg.limit.n_grid, cfg.limit.eps_grid.as_deref()),
        Experiment::SgdCheck => sgd_check(&setup, &cfg.sgd),
        Experiment::CompressCheck => compress_check(&setup, &cfg.compress.cases),
        Experiment::VcCheck => vc_check(&setup, &cfg.vc.n_grid),
    }
}

/// Everything needed to replay a run and confirm its output.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Manifest {
    pub tool: String,
    pub version: String,
    pub prng: String,
    pub experiment: Experiment,
    pub config_sha256: String,
    pub report_sha256: String,
    pub format: Format,
    pub passed: bool,
    pub config: RunConfig,
}

pub fn render(report: &BoundReport, format: Format) -> Result<Vec<u8>> {
    let mut buf = Vec::new();
    match format {
        Format::Csv => report.write_csv(&mut buf)?,
        Format::Json => report.write_json(&mut buf)?,
    }
    Ok(buf)
}

/// Output of [`run`]: the rendered report and its manifest.
pub struct RunOutput {
    pub report: BoundReport,
    pub bytes: Vec<u8>,
    pub manifest: Manifest,
}

/// Runs `cfg` and renders its report. Nothing is written to disk.
pub fn run(cfg: &RunConfig) -> Result<RunOutput> {
    let report = run_experiment(cfg)?;
    let format = cfg.output.format;
    let bytes = render(&report, format)?;
    let manifest = Manifest {
        tool: env!("CARGO_PKG_NAME").into(),
        version: env!("CARGO_PKG_VERSION").into(),
        prng: PRNG_ID.into(),
        experiment: cfg.experiment.expect("checked by run_experiment"),
        config_sha256: cfg.hash(),
        report_sha256: hex::encode(Sha256::digest(&bytes)),
        format,
        passed: report.passed(),
        config: cfg.clone(),
    };
    Ok(RunOutput { report, bytes, manifest })
}

/// `<report>.manifest.json`.
pub fn manifest_path(report: &Path) -> PathBuf {
    let mut s = report.as_os_str().to_owned();
    s.push(".manifest.json");
    PathBuf::from(s)
}

// ---------------------------------------------------------------- command line

#[derive(Debug, Parser)]
#[command(name = "arcb", version, about = "Algorithm-dependent Rademacher complexity experiments")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct RunArgs {
    /// JSON run config.
    #[arg(long)]
    pub config: PathBuf,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub reps: Option<usize>,
    /// Report path; the manifest goes next to it. Without it the report is
    /// printed and no manifest is written.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

#[derive(Debug, Args)]
pub struct LimitArgs {
    #[arg(long, default_value_t = 20)]
    pub exact_limit: usize,
    #[arg(long, default_value_t = 8)]
    pub oracle_limit: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RadModeArg {
    Exact,
    Mc,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Finite Minkowski dimension of a point-cloud CSV.
    Dim {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        metric: Option<Metric>,
        /// Also run the enumeration oracle (small clouds only).
        #[arg(long)]
        oracle: bool,
        #[arg(long, default_value_t = 1e-6)]
        s_tol: f64,
        #[command(flatten)]
        limits: LimitArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Empirical Rademacher complexity of a loss-matrix CSV (one row per
    /// parameter, one column per sample point).
    Rad {
        #[arg(long)]
        loss_matrix: PathBuf,
        #[arg(long, value_enum, default_value_t = RadModeArg::Exact)]
        mode: RadModeArg,
        #[arg(long, default_value_t = 10_000)]
        draws: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 20)]
        exact_n_limit: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Covering numbers of a point-cloud CSV.
    Cover {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, required = true, num_args = 1..)]
        eps: Vec<f64>,
        #[arg(long)]
        metric: Option<Metric>,
        #[command(flatten)]
        limits: LimitArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Expected and high-probability gap against the ARC.
    Arc(RunArgs),
    /// Projected SGD covering and gap checks.
    SgdCheck(RunArgs),
    /// k-compression counting and ARC checks.
    CompressCheck(RunArgs),
    /// Threshold ERM against the VC bound.
    VcCheck(RunArgs),
    /// Trivial, fractal and Steiner-augmented bounds against the ARC.
    FractalCheck(RunArgs),
    /// ARC scaling series (report only).
    LimitTrend(RunArgs),
    /// Runs the experiment named in the config.
    Run(RunArgs),
    /// Re-runs a manifest and compares the report hash.
    Replay {
        manifest: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn emit_json<T: Serialize>(v: &T, out: Option<&PathBuf>) -> Result<()> {
    let text = serde_json::to_string_pretty(v)? + "\n";
    match out {
        Some(p) => fs::write(p, text)?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn solver_limits(a: &LimitArgs) -> SolverLimits {
    SolverLimits {
        exact_limit: a.exact_limit,
        oracle_limit: a.oracle_limit,
        ..SolverLimits::default()
    }
}

fn exit_for(e: &Error) -> i32 {
    match e {
        Error::Config { .. } | Error::LimitExceeded { .. } => EXIT_CONFIG,
        _ => EXIT_FAIL,
    }
}

fn summarize(report: &BoundReport) {
    for c in &report.checks {
        eprintln!("{} {}: {}", if c.pass { "PASS" } else { "FAIL" }, c.name, c.detail);
    }
}

fn write_partial(path: &Path, experiment: &str, err: &Error) {
    let body = serde_json::json!({ "experiment": experiment, "partial": true, "error": err.to_string() });
    if let Err(e) = fs::write(path, format!("{body:#}\n")) {
        eprintln!("could not write partial report: {e}");
    }
}

fn run_command(exp: Option<Experiment>, args: &RunArgs) -> i32 {
    let mut cfg = match RunConfig::from_path(&args.config) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_CONFIG;
        }
    };
    match (exp, cfg.experiment) {
        (Some(a), Some(b)) if a != b => {
            eprintln!(
                "error: {}",
                cfg_err("experiment", format!("config names {} but the command is {}", b.name(), a.name()))
            );
            return EXIT_CONFIG;
        }
        (Some(a), _) => cfg.experiment = Some(a),
        (None, None) => {
            eprintln!("error: {}", cfg_err("experiment", "missing; name it in the config or use a subcommand"));
            return EXIT_CONFIG;
        }
        (None, Some(_)) => {}
    }
    if let Some(s) = args.seed {
        cfg.seed = s;
    }
    if let Some(r) = args.reps {
        cfg.reps = r;
    }
    if let Some(f) = args.format {
        cfg.output.format = f;
    }
    if let Some(o) = &args.out {
        cfg.output.path = Some(o.clone());
    }
    execute(&cfg)
}

fn execute(cfg: &RunConfig) -> i32 {
    let name = cfg.experiment.map_or("?", Experiment::name);
    let out = match run(cfg) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            if let (Some(p), EXIT_FAIL) = (&cfg.output.path, exit_for(&e)) {
                write_partial(p, name, &e);
            }
            return exit_for(&e);
        }
    };
    summarize(&out.report);
    let written = match &cfg.output.path {
        Some(p) => fs::write(p, &out.bytes)
            .map_err(Error::from)
            .and_then(|_| Ok(fs::write(manifest_path(p), serde_json::to_string_pretty(&out.manifest)? + "\n")?)),
        None => std::io::stdout().write_all(&out.bytes).map_err(Error::from),
    };
    if let Err(e) = written {
        eprintln!("error: {e}");
        return EXIT_FAIL;
    }
    if out.report.passed() {
        EXIT_OK
    } else {
        EXIT_FAIL
    }
}

fn replay(manifest: &Path, out: Option<&PathBuf>) -> i32 {
    let m: Manifest = match fs::read_to_string(manifest)
        .map_err(Error::from)
        .and_then(|s| Ok(serde_json::from_str(&s)?))
    {
        Ok(m) => m,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_CONFIG;
        }
    };
    let mut cfg = m.config.clone();
    cfg.output.path = out.cloned();
    match run(&cfg) {
        Ok(o) if o.manifest.report_sha256 == m.report_sha256 => {
            eprintln!("replay matches {}", m.report_sha256);
            if let Some(p) = out {
                if let Err(e) = fs::write(p, &o.bytes) {
                    eprintln!("error: {e}");
                    return EXIT_FAIL;
                }
            }
            EXIT_OK
        }
        Ok(o) => {
            eprintln!("replay differs: {} vs recorded {}", o.manifest.report_sha256, m.report_sha256);
            EXIT_FAIL
        }
        Err(e) => {
            eprintln!("error: {e}");
            exit_for(&e)
        }
    }
}

fn inspect(cmd: &Command) -> Result<()> {
    match cmd {
        Command::Dim {
            input,
            metric,
            oracle,
            s_tol,
            limits,
            out,
        } => {
            let lim = solver_limits(limits);
            let c = read_cloud_csv(input, *metric)?;
            let dim = dim_fm(&c, &lim)?;
            let mut v = serde_json::to_value(&dim)?;
            if !dim.focal && c.len() > 2 {
                v["trivial_bound"] = trivial_dim_bound(&c)?.into();
                if *oracle {
                    v["oracle_value"] = dim_fm_oracle(&c, *s_tol, &lim)?.into();
                }
            }
            emit_json(&v, out.as_ref())
        }
        Command::Rad {
            loss_matrix,
            mode,
            draws,
            seed,
            exact_n_limit,
            out,
        } => {
            let m = LossMatrix::read_csv(loss_matrix)?;
            let est = match mode {
                RadModeArg::Mc => rademacher_mc(&m, *draws, *seed)?,
                RadModeArg::Exact => rademacher_exact(&m, *exact_n_limit)?,
            };
            let mut v = serde_json::to_value(&est)?;
            v["rows"] = m.n_rows().into();
            v["n"] = m.n_cols().into();
            v["massart_bound"] = massart_bound(m.n_rows(), m.range_b(), m.n_cols()).into();
            v["prng"] = PRNG_ID.into();
            emit_json(&v, out.as_ref())
        }
        Command::Cover {
            input,
            eps,
            metric,
            limits,
            out,
        } => {
            let lim = solver_limits(limits);
            let c = read_cloud_csv(input, *metric)?;
            let rows = eps
                .iter()
                .map(|&e| {
                    covering_number(&c, e, &lim)
                        .map(|r| serde_json::json!({ "eps": e, "count": r.count, "exact": r.exact, "cover": r.cover }))
                })
                .collect::<Result<Vec<_>>>()?;
            emit_json(&rows, out.as_ref())
        }
        _ => unreachable!("experiment commands are dispatched separately"),
    }
}

/// Entry point of the `arcb` binary; returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_CONFIG } else { EXIT_OK };
        }
    };
    let exp = |e| Some(e);
    match &cli.command {
        Command::Arc(a) => run_command(exp(Experiment::Arc), a),
        Command::SgdCheck(a) => run_command(exp(Experiment::SgdCheck), a),
        Command::CompressCheck(a) => run_command(exp(Experiment::CompressCheck), a),
        Command::VcCheck(a) => run_command(exp(Experiment::VcCheck), a),
        Command::FractalCheck(a) => run_command(exp(Experiment::FractalCheck), a),
        Command::LimitTrend(a) => run_command(exp(Experiment::LimitTrend), a),
        Command::Run(a) => run_command(None, a),
        Command::Replay { manifest, out } => replay(manifest, out.as_ref()),
        other => match inspect(other) {
            Ok(()) => EXIT_OK,
            Err(e) => {
                eprintln!("error: {e}");
                exit_for(&e)
            }
        },
    }
}
