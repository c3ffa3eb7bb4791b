//! Command-line surface. One subcommand per capability; every subcommand
//! accepts `--seed`, `--output`, and `--format`.
//!
//! Exit codes: 0 success, 1 usage error, 2 data error, 3 numerical failure.

use std::io::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::compare::compare_models;
use crate::csn::csn_fit;
use crate::data::{ecdf_export, read_counts, write_counts, CountData, DataFormat};
use crate::deviation::DeviationFamily;
use crate::error::Error;
use crate::mcmc::{posterior_summary, Phase, ProgressFn, TuningConfig};
use crate::missing::impute_missing;
use crate::model::{CompositeModel, ModelSpec};
use crate::pair::pair_fit_with_progress;
use crate::prior::PriorSpec;
use crate::report::{build_fit_report, DataFingerprint, SCHEMA_VERSION};
use crate::tail::TailFamily;
use crate::xmin::DEFAULT_TAU;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_DATA: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;

/// Environment variable naming a directory for default output files.
pub const OUTPUT_DIR_ENV: &str = "HEAVYTAIL_OUTPUT_DIR";

#[derive(Parser)]
#[command(
    name = "heavytail",
    version,
    about = "Fit heavy-tailed count distributions to complete datasets"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Fit one model by MCMC and write a JSON fit report
    Fit(FitCmd),
    /// Draw synthetic data from a model
    Simulate(SimulateCmd),
    /// Fit a model and report the x_min posterior
    Xmin(XminCmd),
    /// Fit several models and rank them by BIC
    CompareModels(CompareModelsCmd),
    /// Fit two datasets jointly with shared parameters plus offsets
    CompareDatasets(CompareDatasetsCmd),
    /// Infer unrecorded events behind a dataset
    PredictMissing(PredictMissingCmd),
    /// Export the empirical survival function as CSV
    Ecdf(EcdfCmd),
    /// Classical baseline: KS-selected cut-off with tail MLE
    Csn(CsnCmd),
}

#[derive(Args)]
struct DataOpt {
    /// Input dataset path
    #[arg(long)]
    data: PathBuf,
    /// Input format: raw (one integer per line) or pairs (value,count CSV)
    #[arg(long, default_value = "raw")]
    format: String,
}

impl DataOpt {
    fn read(&self) -> Result<CountData, CliError> {
        let format: DataFormat = parse_usage(&self.format)?;
        Ok(read_counts(&self.data, format)?)
    }
}

#[derive(Args)]
struct ModelOpt {
    /// Model structure: m1 (power law + deviation), m2 (lognormal +
    /// deviation), m3 (lognormal alone)
    #[arg(long, default_value = "m1")]
    model: String,
}

impl ModelOpt {
    fn spec(&self) -> Result<ModelSpec, CliError> {
        match self.model.as_str() {
            "m1" => Ok(ModelSpec::m1()),
            "m2" => Ok(ModelSpec::m2()),
            "m3" => Ok(ModelSpec::m3()),
            other => Err(CliError::Usage(format!("unknown model '{other}' (m1|m2|m3)"))),
        }
    }
}

#[derive(Args)]
struct TuningOpt {
    /// Main-phase iterations
    #[arg(long, default_value_t = 50_000)]
    iters: usize,
    /// Iterations discarded as burn-in
    #[arg(long, default_value_t = 10_000)]
    burnin: usize,
    /// Pilot iterations used to tune the proposal
    #[arg(long, default_value_t = 5_000)]
    pilot: usize,
    /// Keep every thin-th draw
    #[arg(long, default_value_t = 1)]
    thin: usize,
}

impl TuningOpt {
    fn config(&self, seed: u64) -> Result<TuningConfig, CliError> {
        let t = TuningConfig {
            pilot_iters: self.pilot,
            main_iters: self.iters,
            burnin: self.burnin,
            thin: self.thin,
            proposal_scale_override: None,
            seed,
        };
        t.validate().map_err(|e| CliError::Usage(e.to_string()))?;
        Ok(t)
    }
}

#[derive(Args)]
struct CommonOpt {
    /// RNG seed
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output path; defaults to $HEAVYTAIL_OUTPUT_DIR/<name> or stdout
    #[arg(long)]
    output: Option<PathBuf>,
    /// Suppress progress output
    #[arg(long)]
    quiet: bool,
}

#[derive(Args)]
struct FitCmd {
    #[command(flatten)]
    data: DataOpt,
    #[command(flatten)]
    model: ModelOpt,
    #[command(flatten)]
    tuning: TuningOpt,
    /// Deviation saturation threshold for the x_min posterior
    #[arg(long, default_value_t = DEFAULT_TAU)]
    tau: f64,
    /// Also run the classical baseline and embed it in the report
    #[arg(long)]
    with_csn: bool,
    /// Write the kept draws to this CSV path
    #[arg(long)]
    chain_csv: Option<PathBuf>,
    #[command(flatten)]
    common: CommonOpt,
}

#[derive(Args)]
struct SimulateCmd {
    /// Backbone family: powerlaw | lognormal
    #[arg(long, default_value = "powerlaw")]
    tail: String,
    /// Power-law exponent (requires --tail powerlaw)
    #[arg(long)]
    theta: Option<f64>,
    /// Lognormal location (requires --tail lognormal)
    #[arg(long)]
    mu: Option<f64>,
    /// Lognormal spread (requires --tail lognormal)
    #[arg(long)]
    sigma: Option<f64>,
    /// Deviation family: uexp | ilog | none
    #[arg(long, default_value = "none")]
    dev: String,
    /// Comma-separated deviation coefficients, e.g. 0.1,0.05,0
    #[arg(long)]
    phi: Option<String>,
    /// Number of draws
    #[arg(long)]
    n: usize,
    /// Output format: raw | pairs
    #[arg(long, default_value = "raw")]
    format: String,
    #[command(flatten)]
    common: CommonOpt,
}

#[derive(Args)]
struct XminCmd {
    #[command(flatten)]
    data: DataOpt,
    #[command(flatten)]
    model: ModelOpt,
    #[command(flatten)]
    tuning: TuningOpt,
    /// Deviation saturation threshold
    #[arg(long, default_value_t = DEFAULT_TAU)]
    tau: f64,
    #[command(flatten)]
    common: CommonOpt,
}

#[derive(Args)]
struct CompareModelsCmd {
    #[command(flatten)]
    data: DataOpt,
    /// Comma-separated candidate models
    #[arg(long, default_value = "m1,m2,m3")]
    models: String,
    #[command(flatten)]
    tuning: TuningOpt,
    #[command(flatten)]
    common: CommonOpt,
}

#[derive(Args)]
struct CompareDatasetsCmd {
    /// First dataset (defines the shared parameters)
    #[arg(long)]
    data_a: PathBuf,
    /// Second dataset (shared parameters plus offsets)
    #[arg(long)]
    data_b: PathBuf,
    /// Input format for both datasets: raw | pairs
    #[arg(long, default_value = "raw")]
    format: String,
    #[command(flatten)]
    model: ModelOpt,
    #[command(flatten)]
    tuning: TuningOpt,
    #[command(flatten)]
    common: CommonOpt,
}

#[derive(Args)]
struct PredictMissingCmd {
    #[command(flatten)]
    data: DataOpt,
    #[command(flatten)]
    model: ModelOpt,
    #[command(flatten)]
    tuning: TuningOpt,
    /// Predictive realisations per posterior draw
    #[arg(long, default_value_t = 1)]
    draws_per_sample: usize,
    #[command(flatten)]
    common: CommonOpt,
}

#[derive(Args)]
struct EcdfCmd {
    #[command(flatten)]
    data: DataOpt,
    #[command(flatten)]
    common: CommonOpt,
}

#[derive(Args)]
struct CsnCmd {
    #[command(flatten)]
    data: DataOpt,
    #[command(flatten)]
    common: CommonOpt,
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Lib(Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Lib(e)
    }
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Lib(Error::Data(_)) | CliError::Lib(Error::Io(_)) => EXIT_DATA,
            CliError::Lib(_) => EXIT_NUMERICAL,
        }
    }

    fn message(&self) -> String {
        match self {
            CliError::Usage(m) => m.clone(),
            CliError::Lib(e) => e.to_string(),
        }
    }
}

fn parse_usage<T: std::str::FromStr<Err = Error>>(s: &str) -> Result<T, CliError> {
    s.parse().map_err(|e: Error| CliError::Usage(e.to_string()))
}

/// Entry point used by the binary.
pub fn run_from_env() -> i32 {
    cli_dispatch(std::env::args())
}

/// Parse and execute; never panics on user input.
pub fn cli_dispatch<I, S>(args: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let args: Vec<String> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            // Help and version requests are not failures.
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    match run_command(cli.command) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            eprintln!("error: {}", e.message());
            if matches!(e, CliError::Usage(_)) {
                eprintln!("run with --help for usage");
            }
            e.exit_code()
        }
    }
}

fn run_command(cmd: Command) -> Result<(), CliError> {
    match cmd {
        Command::Fit(c) => run_fit(c),
        Command::Simulate(c) => run_simulate(c),
        Command::Xmin(c) => run_xmin(c),
        Command::CompareModels(c) => run_compare_models(c),
        Command::CompareDatasets(c) => run_compare_datasets(c),
        Command::PredictMissing(c) => run_predict_missing(c),
        Command::Ecdf(c) => run_ecdf(c),
        Command::Csn(c) => run_csn(c),
    }
}

/// Coarse progress reporting on standard error.
fn progress_printer(label: String) -> impl FnMut(Phase, usize, usize) {
    let mut last_decile = usize::MAX;
    move |phase, done, total| {
        let decile = done * 10 / total.max(1);
        let phase_name = match phase {
            Phase::Pilot => "pilot",
            Phase::Main => "main",
        };
        if decile != last_decile || done == total {
            last_decile = decile;
            eprint!("\r{label}: {phase_name} {done}/{total}      ");
            if done == total && phase == Phase::Main {
                eprintln!();
            }
        }
    }
}

fn write_output(
    output: &Option<PathBuf>,
    default_name: &str,
    contents: &str,
    quiet: bool,
) -> Result<(), CliError> {
    let resolved = output.clone().or_else(|| {
        std::env::var_os(OUTPUT_DIR_ENV).map(|dir| PathBuf::from(dir).join(default_name))
    });
    match resolved {
        Some(path) => {
            if let Some(parent) = path.parent() {
                if !parent.as_os_str().is_empty() {
                    std::fs::create_dir_all(parent).map_err(Error::Io)?;
                }
            }
            std::fs::write(&path, contents).map_err(Error::Io)?;
            if !quiet {
                eprintln!("wrote {}", path.display());
            }
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(contents.as_bytes()).map_err(Error::Io)?;
            if !contents.ends_with('\n') {
                let _ = writeln!(stdout);
            }
        }
    }
    Ok(())
}

fn run_fit(cmd: FitCmd) -> Result<(), CliError> {
    let data = cmd.data.read()?;
    let spec = cmd.model.spec()?;
    let tuning = cmd.tuning.config(cmd.common.seed)?;
    if !(cmd.tau > 0.0 && cmd.tau < 1.0) {
        return Err(CliError::Usage(format!("--tau must lie in (0, 1), got {}", cmd.tau)));
    }
    let baseline = if cmd.with_csn { Some(csn_fit(&data)?) } else { None };
    let mut printer = progress_printer(spec.name.clone());
    let progress: Option<ProgressFn<'_>> =
        if cmd.common.quiet { None } else { Some(&mut printer) };
    let (report, chain) =
        build_fit_report(&data, &spec, &PriorSpec::default(), &tuning, cmd.tau, baseline, progress)?;
    if let Some(path) = &cmd.chain_csv {
        let mut buf = Vec::new();
        chain.write_csv(&mut buf)?;
        std::fs::write(path, buf).map_err(Error::Io)?;
        if !cmd.common.quiet {
            eprintln!("wrote {}", path.display());
        }
    }
    write_output(&cmd.common.output, "fit.json", &report.to_json()?, cmd.common.quiet)
}

fn run_simulate(cmd: SimulateCmd) -> Result<(), CliError> {
    let tail = match cmd.tail.as_str() {
        "powerlaw" => {
            let theta = cmd
                .theta
                .ok_or_else(|| CliError::Usage("--tail powerlaw requires --theta".into()))?;
            TailFamily::power_law(theta).map_err(|e| CliError::Usage(e.to_string()))?
        }
        "lognormal" => {
            let (mu, sigma) = match (cmd.mu, cmd.sigma) {
                (Some(m), Some(s)) => (m, s),
                _ => {
                    return Err(CliError::Usage(
                        "--tail lognormal requires --mu and --sigma".into(),
                    ))
                }
            };
            TailFamily::discrete_log_normal(mu, sigma)
                .map_err(|e| CliError::Usage(e.to_string()))?
        }
        other => return Err(CliError::Usage(format!("unknown tail '{other}' (powerlaw|lognormal)"))),
    };
    let phi = cmd
        .phi
        .as_deref()
        .map(parse_phi_list)
        .transpose()?
        .unwrap_or_default();
    let dev = match cmd.dev.as_str() {
        "none" => {
            if !phi.is_empty() {
                return Err(CliError::Usage("--phi given but --dev none".into()));
            }
            DeviationFamily::None
        }
        "uexp" => {
            if phi.is_empty() {
                return Err(CliError::Usage("--dev uexp requires --phi".into()));
            }
            DeviationFamily::unit_exp_cdf(phi).map_err(|e| CliError::Usage(e.to_string()))?
        }
        "ilog" => {
            if phi.len() != 2 {
                return Err(CliError::Usage("--dev ilog requires --phi phi0,phi1".into()));
            }
            DeviationFamily::inverse_logistic(phi[0], phi[1])
                .map_err(|e| CliError::Usage(e.to_string()))?
        }
        other => return Err(CliError::Usage(format!("unknown deviation '{other}' (uexp|ilog|none)"))),
    };
    if cmd.n == 0 {
        return Err(CliError::Usage("--n must be >= 1".into()));
    }
    let format: DataFormat = parse_usage(&cmd.format)?;
    let model = CompositeModel::new(tail, dev)?;
    let draws = model.sample(cmd.n, cmd.common.seed);
    let contents = match format {
        DataFormat::Raw => {
            let mut s = String::with_capacity(draws.len() * 4);
            for d in &draws {
                s.push_str(&d.to_string());
                s.push('\n');
            }
            s
        }
        DataFormat::Pairs => {
            let data = CountData::from_observations(&draws)?;
            let mut buf = Vec::new();
            write_counts(&mut buf, &data, DataFormat::Pairs)?;
            String::from_utf8(buf).expect("ascii output")
        }
    };
    write_output(&cmd.common.output, "simulate.txt", &contents, cmd.common.quiet)
}

#[derive(Serialize)]
struct XminJson {
    schema_version: u32,
    data: DataFingerprint,
    model: ModelSpec,
    seed: u64,
    tau: f64,
    median: u64,
    interval: (u64, u64),
    unbounded: u64,
    histogram: Vec<(u64, u64)>,
}

fn run_xmin(cmd: XminCmd) -> Result<(), CliError> {
    let data = cmd.data.read()?;
    let spec = cmd.model.spec()?;
    if spec.deviation_param_count() == 0 {
        return Err(CliError::Usage(format!(
            "model {} has no deviation block, so x_min is undefined",
            spec.name
        )));
    }
    let tuning = cmd.tuning.config(cmd.common.seed)?;
    if !(cmd.tau > 0.0 && cmd.tau < 1.0) {
        return Err(CliError::Usage(format!("--tau must lie in (0, 1), got {}", cmd.tau)));
    }
    let mut printer = progress_printer(spec.name.clone());
    let progress: Option<ProgressFn<'_>> =
        if cmd.common.quiet { None } else { Some(&mut printer) };
    let chain = crate::mcmc::run_mcmc_with_progress(
        &data,
        &spec,
        &PriorSpec::default(),
        &tuning,
        progress,
    )?;
    let posterior = crate::xmin::xmin_posterior(&chain, cmd.tau)?;
    let json = serde_json::to_string_pretty(&XminJson {
        schema_version: SCHEMA_VERSION,
        data: DataFingerprint::of(&data),
        model: spec,
        seed: cmd.common.seed,
        tau: posterior.tau,
        median: posterior.median,
        interval: posterior.interval,
        unbounded: posterior.unbounded,
        histogram: posterior.histogram.clone(),
    })
    .map_err(Error::Json)?;
    write_output(&cmd.common.output, "xmin.json", &json, cmd.common.quiet)
}

fn run_compare_models(cmd: CompareModelsCmd) -> Result<(), CliError> {
    let data = cmd.data.read()?;
    let tuning = cmd.tuning.config(cmd.common.seed)?;
    let mut specs = Vec::new();
    for name in cmd.models.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        specs.push(ModelOpt { model: name.to_string() }.spec()?);
    }
    if specs.len() < 2 {
        return Err(CliError::Usage("--models needs at least two entries".into()));
    }
    if !cmd.common.quiet {
        eprintln!("fitting {} models on n = {} observations", specs.len(), data.n());
    }
    let comparison = compare_models(&data, &specs, &PriorSpec::default(), &tuning)?;
    if !cmd.common.quiet {
        eprint!("{}", comparison.render_text());
    }
    let json = serde_json::to_string_pretty(&comparison).map_err(Error::Json)?;
    write_output(&cmd.common.output, "compare-models.json", &json, cmd.common.quiet)
}

#[derive(Serialize)]
struct PairJson {
    schema_version: u32,
    data_a: DataFingerprint,
    data_b: DataFingerprint,
    model: ModelSpec,
    seed: u64,
    acceptance_rate: f64,
    posterior: Vec<crate::mcmc::ParamSummary>,
}

fn run_compare_datasets(cmd: CompareDatasetsCmd) -> Result<(), CliError> {
    let format: DataFormat = parse_usage(&cmd.format)?;
    let data_a = read_counts(&cmd.data_a, format)?;
    let data_b = read_counts(&cmd.data_b, format)?;
    let spec = cmd.model.spec()?;
    let tuning = cmd.tuning.config(cmd.common.seed)?;
    let mut printer = progress_printer("pair".to_string());
    let progress: Option<ProgressFn<'_>> =
        if cmd.common.quiet { None } else { Some(&mut printer) };
    let chain =
        pair_fit_with_progress(&data_a, &data_b, &spec, &PriorSpec::default(), &tuning, progress)?;
    let json = serde_json::to_string_pretty(&PairJson {
        schema_version: SCHEMA_VERSION,
        data_a: DataFingerprint::of(&data_a),
        data_b: DataFingerprint::of(&data_b),
        model: spec,
        seed: cmd.common.seed,
        acceptance_rate: chain.acceptance_rate,
        posterior: posterior_summary(&chain),
    })
    .map_err(Error::Json)?;
    write_output(&cmd.common.output, "compare-datasets.json", &json, cmd.common.quiet)
}

#[derive(Serialize)]
struct MissingJson {
    schema_version: u32,
    data: DataFingerprint,
    model: ModelSpec,
    seed: u64,
    draws_per_sample: usize,
    observed_events: u64,
    observed_sum: u64,
    mean_events: f64,
    mean_sum: f64,
    event_quantiles: Quantiles,
    sum_quantiles: Quantiles,
    predictive_draws: usize,
}

#[derive(Serialize)]
struct Quantiles {
    q05: f64,
    q50: f64,
    q95: f64,
}

fn run_predict_missing(cmd: PredictMissingCmd) -> Result<(), CliError> {
    let data = cmd.data.read()?;
    let spec = cmd.model.spec()?;
    let tuning = cmd.tuning.config(cmd.common.seed)?;
    let mut printer = progress_printer(spec.name.clone());
    let progress: Option<ProgressFn<'_>> =
        if cmd.common.quiet { None } else { Some(&mut printer) };
    let chain = crate::mcmc::run_mcmc_with_progress(
        &data,
        &spec,
        &PriorSpec::default(),
        &tuning,
        progress,
    )?;
    let total = impute_missing(&chain, &data, cmd.draws_per_sample, cmd.common.seed)?;
    let json = serde_json::to_string_pretty(&MissingJson {
        schema_version: SCHEMA_VERSION,
        data: DataFingerprint::of(&data),
        model: spec,
        seed: cmd.common.seed,
        draws_per_sample: total.draws_per_sample,
        observed_events: total.observed_events,
        observed_sum: total.observed_sum,
        mean_events: total.mean_events(),
        mean_sum: total.mean_sum(),
        event_quantiles: Quantiles {
            q05: total.event_quantile(0.05),
            q50: total.event_quantile(0.5),
            q95: total.event_quantile(0.95),
        },
        sum_quantiles: Quantiles {
            q05: total.sum_quantile(0.05),
            q50: total.sum_quantile(0.5),
            q95: total.sum_quantile(0.95),
        },
        predictive_draws: total.event_draws.len(),
    })
    .map_err(Error::Json)?;
    write_output(&cmd.common.output, "predict-missing.json", &json, cmd.common.quiet)
}

fn run_ecdf(cmd: EcdfCmd) -> Result<(), CliError> {
    let data = cmd.data.read()?;
    let mut out = String::from("x,survival\n");
    for row in ecdf_export(&data) {
        out.push_str(&format!("{},{}\n", row.x, row.survival));
    }
    write_output(&cmd.common.output, "ecdf.csv", &out, cmd.common.quiet)
}

#[derive(Serialize)]
struct CsnJson {
    schema_version: u32,
    data: DataFingerprint,
    xmin: u64,
    alpha: f64,
    ks: f64,
    frac_below: f64,
}

fn run_csn(cmd: CsnCmd) -> Result<(), CliError> {
    let data = cmd.data.read()?;
    let fit = csn_fit(&data)?;
    let json = serde_json::to_string_pretty(&CsnJson {
        schema_version: SCHEMA_VERSION,
        data: DataFingerprint::of(&data),
        xmin: fit.xmin,
        alpha: fit.alpha,
        ks: fit.ks,
        frac_below: fit.frac_below,
    })
    .map_err(Error::Json)?;
    write_output(&cmd.common.output, "csn.json", &json, cmd.common.quiet)
}

fn parse_phi_list(s: &str) -> Result<Vec<f64>, CliError> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<f64>()
                .map_err(|_| CliError::Usage(format!("cannot parse '{t}' as a number in --phi")))
        })
        .collect()
}
