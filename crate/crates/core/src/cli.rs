//! Command-line front end: JSON configs in, CSV/JSON/SVG artifacts out.
//!
//! Every subcommand reads one JSON config (`--config`) and writes its main
//! artifact to `--out`. Secondary CSV artifacts go next to it with a suffix
//! (`_reps`, `_trace`). All files are written atomically.

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::control::{run_monte_carlo, ControlConfig};
use crate::data::{format_f64, SampleSet};
use crate::error::{LiError, Result};
use crate::experiments::{
    fit_loglog_slope, run_convergence_study, run_lacki_study, ConvergenceStudyConfig,
    LackiStudyConfig,
};
use crate::interpolator::LipschitzInterpolator;
use crate::io::{csv_bytes, write_atomic};
use crate::lacki::lacki_full;
use crate::metric::HolderMetric;
use crate::noise::{empirical_eta_check, NoiseModel, TailClaim};
use crate::plot::{rate_plot, trajectory_plot};
use crate::seed::rng_from_seed;

#[derive(Debug, Parser)]
#[command(
    name = "lipinterp",
    version,
    about = "Lipschitz interpolation under bounded noise"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Clone, Args)]
pub struct CommonArgs {
    /// JSON configuration document.
    #[arg(long)]
    pub config: PathBuf,
    /// Main output file.
    #[arg(long)]
    pub out: PathBuf,
    /// Overrides the seed in the config.
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Optional SVG plot of the result.
    #[arg(long)]
    pub svg: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Fit or estimate the Lipschitz constant of a data set.
    Fit(CommonArgs),
    /// Predict at query points with floor/ceiling (and envelope) columns.
    Predict(CommonArgs),
    /// Sup-error convergence study of the fixed-L interpolator.
    RateStudy(CommonArgs),
    /// Trajectory of the LACKI estimate against the best constant.
    LackiStudy(CommonArgs),
    /// Pendulum set-point tracking with online learning.
    Pendulum {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long)]
        reps: Option<usize>,
        #[arg(long)]
        steps: Option<usize>,
    },
    /// Empirical check of a noise model's boundary tails.
    EtaCheck(CommonArgs),
}

/// Shared model section of `fit` and `predict` configs.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FitConfig {
    /// Sample CSV, relative to the config file.
    pub data: PathBuf,
    #[serde(default)]
    pub metric: HolderMetric,
    /// Fixed Lipschitz constant; when absent it is estimated with LACKI.
    #[serde(default)]
    pub lipschitz: Option<f64>,
    /// LACKI offset; defaults to `2·noise_bound`.
    #[serde(default)]
    pub lambda: Option<f64>,
    #[serde(default)]
    pub noise_bound: Option<f64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PredictConfig {
    pub data: PathBuf,
    #[serde(default)]
    pub metric: HolderMetric,
    #[serde(default)]
    pub lipschitz: Option<f64>,
    #[serde(default)]
    pub lambda: Option<f64>,
    #[serde(default)]
    pub noise_bound: Option<f64>,
    /// CSV of query points with header `x0,...,x{d-1}`.
    #[serde(default)]
    pub queries: Option<PathBuf>,
    /// Inline query points.
    #[serde(default)]
    pub query_points: Option<Vec<Vec<f64>>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EtaCheckConfig {
    pub noise: NoiseModel,
    #[serde(default = "default_draws")]
    pub n_draws: usize,
    pub epsilons: Vec<f64>,
    #[serde(default)]
    pub claim: Option<TailClaim>,
    #[serde(default)]
    pub seed: u64,
}

fn default_draws() -> usize {
    1_000_000
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FitReport {
    pub n: usize,
    pub dim: usize,
    pub lipschitz: f64,
    pub method: String,
    pub lambda: Option<f64>,
}

fn read_config<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| LiError::config(format!("cannot read config {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| LiError::config(format!("{}: {e}", path.display())))
}

fn resolve(config_path: &Path, p: &Path) -> PathBuf {
    if p.is_absolute() {
        p.to_path_buf()
    } else {
        config_path.parent().unwrap_or(Path::new(".")).join(p)
    }
}

/// `out.csv` → `out_reps.csv`.
pub fn sibling_path(out: &Path, suffix: &str) -> PathBuf {
    let stem = out
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    let name = match out.extension() {
        Some(ext) => format!("{stem}{suffix}.{}", ext.to_string_lossy()),
        None => format!("{stem}{suffix}"),
    };
    out.with_file_name(name)
}

fn json_bytes<T: Serialize>(value: &T) -> Result<Vec<u8>> {
    let mut bytes = serde_json::to_vec_pretty(value)?;
    bytes.push(b'\n');
    Ok(bytes)
}

fn load_data(config_path: &Path, data: &Path) -> Result<SampleSet> {
    let path = resolve(config_path, data);
    SampleSet::load(&path).map_err(|e| match e {
        LiError::Io(io) => LiError::config(format!("cannot read data {}: {io}", path.display())),
        other => other,
    })
}

fn fit_constant(
    data: &SampleSet,
    metric: &HolderMetric,
    lipschitz: Option<f64>,
    lambda: Option<f64>,
    noise_bound: Option<f64>,
) -> Result<FitReport> {
    let (lipschitz, method, lambda) = match lipschitz {
        Some(l) => {
            LipschitzInterpolator::new(*metric, l).map_err(|e| LiError::config(e.to_string()))?;
            (l, "fixed", None)
        }
        None => {
            let lambda = lambda.or(noise_bound.map(|e| 2.0 * e)).ok_or_else(|| {
                LiError::config("set lipschitz, or lambda / noise_bound for LACKI estimation")
            })?;
            (lacki_full(data, metric, lambda)?, "lacki", Some(lambda))
        }
    };
    Ok(FitReport {
        n: data.len(),
        dim: data.dim(),
        lipschitz,
        method: method.into(),
        lambda,
    })
}

fn cmd_fit(args: &CommonArgs) -> Result<()> {
    let cfg: FitConfig = read_config(&args.config)?;
    let data = load_data(&args.config, &cfg.data)?;
    let report = fit_constant(
        &data,
        &cfg.metric,
        cfg.lipschitz,
        cfg.lambda,
        cfg.noise_bound,
    )?;
    let bytes = match args.format {
        Format::Json => json_bytes(&report)?,
        Format::Csv => csv_bytes(
            &["n", "dim", "lipschitz", "method", "lambda"],
            [vec![
                report.n.to_string(),
                report.dim.to_string(),
                format_f64(report.lipschitz),
                report.method.clone(),
                report.lambda.map(format_f64).unwrap_or_default(),
            ]],
        )?,
    };
    write_atomic(&args.out, &bytes)
}

fn cmd_predict(args: &CommonArgs) -> Result<()> {
    let cfg: PredictConfig = read_config(&args.config)?;
    let data = load_data(&args.config, &cfg.data)?;
    let fit = fit_constant(
        &data,
        &cfg.metric,
        cfg.lipschitz,
        cfg.lambda,
        cfg.noise_bound,
    )?;
    let mut model = LipschitzInterpolator::new(cfg.metric, fit.lipschitz)?;
    if let Some(e) = cfg.noise_bound {
        model = model
            .with_noise_bound(e)
            .map_err(|e| LiError::config(e.to_string()))?;
    }
    let queries: Vec<Vec<f64>> = match (&cfg.queries, &cfg.query_points) {
        (Some(path), None) => read_queries(&resolve(&args.config, path), data.dim())?,
        (None, Some(points)) => points.clone(),
        _ => {
            return Err(LiError::config(
                "give exactly one of queries or query_points",
            ))
        }
    };

    #[derive(Serialize)]
    struct Row {
        x: Vec<f64>,
        prediction: f64,
        floor: f64,
        ceiling: f64,
        #[serde(skip_serializing_if = "Option::is_none")]
        envelope: Option<(f64, f64)>,
    }
    let mut rows = Vec::with_capacity(queries.len());
    for x in &queries {
        if x.len() != data.dim() {
            return Err(LiError::config(format!(
                "query has {} coordinates, data has {}",
                x.len(),
                data.dim()
            )));
        }
        let b = model.bounds(x, &data)?;
        let envelope = match model.noise_bound() {
            Some(_) => Some(model.envelope(x, &data)?),
            None => None,
        };
        rows.push(Row {
            x: x.clone(),
            prediction: b.midpoint(),
            floor: b.floor,
            ceiling: b.ceiling,
            envelope,
        });
    }
    let bytes = match args.format {
        Format::Json => json_bytes(&rows)?,
        Format::Csv => {
            let mut header: Vec<String> = (0..data.dim()).map(|j| format!("x{j}")).collect();
            header.extend(["prediction", "floor", "ceiling"].map(String::from));
            if model.noise_bound().is_some() {
                header.extend(["lower", "upper"].map(String::from));
            }
            let header: Vec<&str> = header.iter().map(String::as_str).collect();
            csv_bytes(
                &header,
                rows.iter().map(|r| {
                    let mut rec: Vec<String> = r.x.iter().map(|v| format_f64(*v)).collect();
                    rec.extend([r.prediction, r.floor, r.ceiling].map(format_f64));
                    if let Some((lo, hi)) = r.envelope {
                        rec.extend([lo, hi].map(format_f64));
                    }
                    rec
                }),
            )?
        }
    };
    write_atomic(&args.out, &bytes)
}

fn read_queries(path: &Path, dim: usize) -> Result<Vec<Vec<f64>>> {
    let file = std::fs::File::open(path)
        .map_err(|e| LiError::config(format!("cannot read queries {}: {e}", path.display())))?;
    let mut rdr = csv::Reader::from_reader(file);
    let header = rdr.headers()?.clone();
    if header.len() != dim
        || header
            .iter()
            .enumerate()
            .any(|(j, h)| h.trim() != format!("x{j}"))
    {
        return Err(LiError::config(format!(
            "query CSV header must be x0..x{}",
            dim - 1
        )));
    }
    rdr.records()
        .enumerate()
        .map(|(i, rec)| {
            let rec = rec?;
            rec.iter()
                .map(|s| crate::data::parse_field(s, i + 1))
                .collect()
        })
        .collect()
}

fn cmd_rate_study(args: &CommonArgs) -> Result<()> {
    let mut cfg: ConvergenceStudyConfig = read_config(&args.config)?;
    if let Some(seed) = args.seed {
        cfg.seed = seed;
    }
    cfg.validate()?;
    let result = run_convergence_study(&cfg)?;
    let rate = cfg.rate_spec();
    match args.format {
        Format::Csv => {
            write_atomic(&sibling_path(&args.out, "_reps"), &result.reps_csv()?)?;
            write_atomic(&args.out, &result.summary_csv(rate.as_ref())?)?;
        }
        Format::Json => {
            let slope = fit_loglog_slope(&result).ok().map(|(s, _)| s);
            let doc = serde_json::json!({
                "config": cfg,
                "theoretical_exponent": rate.map(|r| r.exponent()),
                "fitted_slope": slope,
                "rows": result.rows,
            });
            write_atomic(&args.out, &json_bytes(&doc)?)?;
        }
    }
    if let Some(svg) = &args.svg {
        write_atomic(svg, rate_plot(&result, rate.as_ref())?.as_bytes())?;
    }
    Ok(())
}

fn cmd_lacki_study(args: &CommonArgs) -> Result<()> {
    let mut cfg: LackiStudyConfig = read_config(&args.config)?;
    if let Some(seed) = args.seed {
        cfg.study.seed = seed;
    }
    cfg.study.validate()?;
    let result = run_lacki_study(&cfg)?;
    match args.format {
        Format::Csv => {
            write_atomic(&sibling_path(&args.out, "_reps"), &result.reps_csv()?)?;
            write_atomic(&args.out, &result.summary_csv()?)?;
        }
        Format::Json => {
            let doc = serde_json::json!({ "config": cfg, "result": result });
            write_atomic(&args.out, &json_bytes(&doc)?)?;
        }
    }
    Ok(())
}

fn cmd_pendulum(args: &CommonArgs, reps: Option<usize>, steps: Option<usize>) -> Result<()> {
    let mut cfg: ControlConfig = read_config(&args.config)?;
    if let Some(seed) = args.seed {
        cfg.seed = seed;
    }
    if let Some(r) = reps {
        cfg.repetitions = r;
    }
    if let Some(s) = steps {
        cfg.steps = s;
    }
    cfg.validate()?;
    let result = run_monte_carlo(&cfg)?;
    match args.format {
        Format::Csv => {
            write_atomic(&sibling_path(&args.out, "_trace"), &result.trace_csv()?)?;
            write_atomic(&args.out, &result.summary_csv()?)?;
        }
        Format::Json => {
            let doc = serde_json::json!({ "config": cfg, "result": result });
            write_atomic(&args.out, &json_bytes(&doc)?)?;
        }
    }
    if let Some(svg) = &args.svg {
        write_atomic(svg, trajectory_plot(&result, cfg.delta)?.as_bytes())?;
    }
    Ok(())
}

fn cmd_eta_check(args: &CommonArgs) -> Result<()> {
    let mut cfg: EtaCheckConfig = read_config(&args.config)?;
    if let Some(seed) = args.seed {
        cfg.seed = seed;
    }
    let mut rng = rng_from_seed(cfg.seed);
    let report = empirical_eta_check(&cfg.noise, cfg.claim, cfg.n_draws, &cfg.epsilons, &mut rng)
        .map_err(|e| match e {
        LiError::InvalidInput(m) | LiError::Unsupported(m) => LiError::config(m),
        other => other,
    })?;
    let bytes = match args.format {
        Format::Json => json_bytes(&report)?,
        Format::Csv => csv_bytes(
            &[
                "epsilon",
                "claimed",
                "upper_freq",
                "lower_freq",
                "margin",
                "pass",
            ],
            report.rows.iter().map(|r| {
                vec![
                    format_f64(r.epsilon),
                    format_f64(r.claimed),
                    format_f64(r.upper_freq),
                    format_f64(r.lower_freq),
                    format_f64(r.margin),
                    r.pass.to_string(),
                ]
            }),
        )?,
    };
    write_atomic(&args.out, &bytes)
}

/// Runs one parsed command.
pub fn dispatch(cli: &Cli) -> Result<()> {
    match &cli.command {
        Command::Fit(a) => cmd_fit(a),
        Command::Predict(a) => cmd_predict(a),
        Command::RateStudy(a) => cmd_rate_study(a),
        Command::LackiStudy(a) => cmd_lacki_study(a),
        Command::Pendulum {
            common,
            reps,
            steps,
        } => cmd_pendulum(common, *reps, *steps),
        Command::EtaCheck(a) => cmd_eta_check(a),
    }
}

/// Exit status for an error: 2 for bad configuration, 1 otherwise.
pub fn exit_code(err: &LiError) -> i32 {
    if err.is_config_error() {
        2
    } else {
        1
    }
}

/// Machine-readable error record printed on failure.
pub fn error_record(err: &LiError) -> String {
    let kind = if err.is_config_error() {
        "config"
    } else {
        "runtime"
    };
    serde_json::json!({ "error": kind, "message": err.to_string() }).to_string()
}
