use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::rate::RateSpec;
use super::targets::Target;
use crate::data::{format_f64, SampleSet};
use crate::error::{LiError, Result};
use crate::interpolator::{sup_error, LipschitzInterpolator};
use crate::io::{csv_bytes, csv_records, field_f64, field_usize};
use crate::metric::HolderMetric;
use crate::noise::NoiseModel;
use crate::seed::derived_rng;

const INPUT_STREAM: u64 = 0;
const NOISE_STREAM: u64 = 1;

/// Sup-error convergence study of the fixed-L interpolator.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConvergenceStudyConfig {
    pub target: Target,
    #[serde(default)]
    pub metric: HolderMetric,
    /// Defaults to `1.1·L*` of the target.
    #[serde(default)]
    pub lipschitz: Option<f64>,
    pub noise: NoiseModel,
    #[serde(default = "default_sample_sizes")]
    pub sample_sizes: Vec<usize>,
    #[serde(default = "default_repetitions")]
    pub repetitions: usize,
    /// Defaults to 2000 points in 1-D and 10⁴ in 2-D.
    #[serde(default)]
    pub grid_points: Option<usize>,
    #[serde(default)]
    pub seed: u64,
}

fn default_sample_sizes() -> Vec<usize> {
    (7..=15).map(|k| 1usize << k).collect()
}

fn default_repetitions() -> usize {
    20
}

impl ConvergenceStudyConfig {
    /// Study of `target` with every optional field at its default.
    pub fn new(target: Target, noise: NoiseModel) -> Self {
        Self {
            target,
            metric: HolderMetric::default(),
            lipschitz: None,
            noise,
            sample_sizes: default_sample_sizes(),
            repetitions: default_repetitions(),
            grid_points: None,
            seed: 0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.sample_sizes.is_empty() {
            return Err(LiError::config("sample_sizes must not be empty"));
        }
        if self.sample_sizes[0] == 0 {
            return Err(LiError::config("sample sizes must be positive"));
        }
        if self.sample_sizes.windows(2).any(|w| w[0] >= w[1]) {
            return Err(LiError::config("sample_sizes must be strictly increasing"));
        }
        if self.repetitions == 0 {
            return Err(LiError::config("repetitions must be at least 1"));
        }
        if self.grid_points() < 100 {
            return Err(LiError::config("grid_points must be at least 100"));
        }
        self.resolved_lipschitz()?;
        Ok(())
    }

    pub fn grid_points(&self) -> usize {
        self.grid_points
            .unwrap_or_else(|| self.target.default_grid_points())
    }

    pub fn resolved_lipschitz(&self) -> Result<f64> {
        match self.lipschitz {
            Some(l) if l >= 0.0 && l.is_finite() => Ok(l),
            Some(l) => Err(LiError::config(format!(
                "lipschitz must be nonnegative, got {l}"
            ))),
            None => self
                .target
                .best_lipschitz(&self.metric)
                .map(|l| 1.1 * l)
                .ok_or_else(|| {
                    LiError::config("no registered best constant for this metric; set lipschitz")
                }),
        }
    }

    /// Rate parameters, when the noise model has a known boundary exponent.
    pub fn rate_spec(&self) -> Option<RateSpec> {
        let eta = self.noise.eta()?;
        RateSpec::new(self.target.dim(), self.metric.alpha(), eta).ok()
    }
}

/// Draws `n` inputs uniformly in the target's domain box together with
/// noisy observations. Inputs and noise come from separate sub-streams so
/// studies with different noise models see the same inputs.
pub(crate) fn draw_dataset(
    target: Target,
    noise: &NoiseModel,
    n: usize,
    seed: u64,
    rep: usize,
) -> SampleSet {
    let domain = target.domain();
    let mut input_rng = derived_rng(seed, &[n as u64, rep as u64, INPUT_STREAM]);
    let mut noise_rng = derived_rng(seed, &[n as u64, rep as u64, NOISE_STREAM]);
    let mut data = SampleSet::with_capacity(domain.len(), n).expect("targets have dim >= 1");
    let mut x = vec![0.0; domain.len()];
    for _ in 0..n {
        for (slot, &(a, b)) in x.iter_mut().zip(&domain) {
            *slot = a + (b - a) * input_rng.random::<f64>();
        }
        let y = target.eval(&x) + noise.sample(&mut noise_rng);
        data.push(&x, y).expect("dimension matches domain");
    }
    data
}

/// `(n, mean, std, theoretical_rate)` as read back from a summary CSV.
pub type SummaryRow = (usize, f64, f64, Option<f64>);

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StudyRow {
    pub n: usize,
    pub mean: f64,
    pub std: f64,
    pub errors: Vec<f64>,
}

impl StudyRow {
    /// Aggregates per-seed errors: mean and across-repetition sample
    /// standard deviation (zero for a single repetition).
    pub fn from_errors(n: usize, errors: Vec<f64>) -> Self {
        let k = errors.len() as f64;
        let mean = errors.iter().sum::<f64>() / k;
        let std = if errors.len() > 1 {
            (errors.iter().map(|e| (e - mean) * (e - mean)).sum::<f64>() / (k - 1.0)).sqrt()
        } else {
            0.0
        };
        Self {
            n,
            mean,
            std,
            errors,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StudyResult {
    pub rows: Vec<StudyRow>,
}

const REPS_HEADER: [&str; 3] = ["n", "rep", "sup_error"];
const SUMMARY_HEADER: [&str; 4] = ["n", "mean", "std", "theoretical_rate"];

impl StudyResult {
    pub fn sample_sizes(&self) -> Vec<usize> {
        self.rows.iter().map(|r| r.n).collect()
    }

    pub fn means(&self) -> Vec<f64> {
        self.rows.iter().map(|r| r.mean).collect()
    }

    /// `n,rep,sup_error`, one line per (sample size, repetition).
    pub fn reps_csv(&self) -> Result<Vec<u8>> {
        let rows = self.rows.iter().flat_map(|r| {
            r.errors
                .iter()
                .enumerate()
                .map(move |(rep, e)| vec![r.n.to_string(), rep.to_string(), format_f64(*e)])
        });
        csv_bytes(&REPS_HEADER, rows)
    }

    /// Rebuilds a result from [`Self::reps_csv`] output.
    pub fn from_reps_csv(bytes: &[u8]) -> Result<Self> {
        let mut rows: Vec<(usize, Vec<f64>)> = Vec::new();
        for (i, rec) in csv_records(bytes, &REPS_HEADER)?.iter().enumerate() {
            let n = field_usize(rec, 0, i + 1)?;
            let rep = field_usize(rec, 1, i + 1)?;
            let e = field_f64(rec, 2, i + 1)?;
            match rows.last_mut() {
                Some((last_n, errs)) if *last_n == n => {
                    if rep != errs.len() {
                        return Err(LiError::invalid(format!(
                            "row {}: repetitions out of order",
                            i + 1
                        )));
                    }
                    errs.push(e);
                }
                _ => {
                    if rep != 0 {
                        return Err(LiError::invalid(format!(
                            "row {}: repetitions out of order",
                            i + 1
                        )));
                    }
                    rows.push((n, vec![e]));
                }
            }
        }
        Ok(Self {
            rows: rows
                .into_iter()
                .map(|(n, e)| StudyRow::from_errors(n, e))
                .collect(),
        })
    }

    /// `n,mean,std,theoretical_rate`; the rate column is empty when the
    /// noise model has no boundary exponent.
    pub fn summary_csv(&self, rate: Option<&RateSpec>) -> Result<Vec<u8>> {
        let mut out = Vec::with_capacity(self.rows.len());
        for r in &self.rows {
            let a_n = match rate {
                Some(spec) if r.n >= 2 => format_f64(spec.rate(r.n)?),
                _ => String::new(),
            };
            out.push(vec![
                r.n.to_string(),
                format_f64(r.mean),
                format_f64(r.std),
                a_n,
            ]);
        }
        csv_bytes(&SUMMARY_HEADER, out)
    }

    /// Parses a summary CSV back into rows.
    pub fn parse_summary_csv(bytes: &[u8]) -> Result<Vec<SummaryRow>> {
        csv_records(bytes, &SUMMARY_HEADER)?
            .iter()
            .enumerate()
            .map(|(i, rec)| {
                let rate = if rec[3].trim().is_empty() {
                    None
                } else {
                    Some(field_f64(rec, 3, i + 1)?)
                };
                Ok((
                    field_usize(rec, 0, i + 1)?,
                    field_f64(rec, 1, i + 1)?,
                    field_f64(rec, 2, i + 1)?,
                    rate,
                ))
            })
            .collect()
    }
}

/// Runs every (sample size, repetition) pair; each draws its own dataset,
/// fits the interpolator and measures the sup error on a fixed grid.
pub fn run_convergence_study(config: &ConvergenceStudyConfig) -> Result<StudyResult> {
    config.validate()?;
    let model = LipschitzInterpolator::new(config.metric, config.resolved_lipschitz()?)?;
    let grid = config.target.grid(config.grid_points());

    let jobs: Vec<(usize, usize)> = config
        .sample_sizes
        .iter()
        .flat_map(|&n| (0..config.repetitions).map(move |rep| (n, rep)))
        .collect();
    let errors: Vec<f64> = jobs
        .par_iter()
        .map(|&(n, rep)| {
            let data = draw_dataset(config.target, &config.noise, n, config.seed, rep);
            sup_error(
                |x| {
                    model
                        .predict(x, &data)
                        .expect("nonempty data of matching dimension")
                },
                |x| config.target.eval(x),
                &grid,
            )
            .expect("grid is nonempty")
        })
        .collect();

    let rows = errors
        .chunks(config.repetitions)
        .zip(&config.sample_sizes)
        .map(|(errs, &n)| StudyRow::from_errors(n, errs.to_vec()))
        .collect();
    Ok(StudyResult { rows })
}

/// Ordinary least squares of `log y` on `log n`; returns `(slope, intercept)`.
pub fn fit_loglog(ns: &[f64], values: &[f64]) -> Result<(f64, f64)> {
    if ns.len() != values.len() {
        return Err(LiError::invalid(
            "slope fit needs equally many sizes and values",
        ));
    }
    if ns.len() < 3 {
        return Err(LiError::Degenerate(
            "slope fit needs at least 3 points".into(),
        ));
    }
    if let Some(v) = ns
        .iter()
        .chain(values)
        .find(|v| !v.is_finite() || **v <= 0.0)
    {
        return Err(LiError::Degenerate(format!(
            "log-log fit needs positive finite values, got {v}"
        )));
    }
    let xs: Vec<f64> = ns.iter().map(|n| n.ln()).collect();
    let ys: Vec<f64> = values.iter().map(|v| v.ln()).collect();
    let k = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / k;
    let my = ys.iter().sum::<f64>() / k;
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    if sxx == 0.0 {
        return Err(LiError::Degenerate("all sample sizes are equal".into()));
    }
    let slope = sxy / sxx;
    Ok((slope, my - slope * mx))
}

/// Log-log slope of mean sup error against sample size.
pub fn fit_loglog_slope(result: &StudyResult) -> Result<(f64, f64)> {
    let ns: Vec<f64> = result.rows.iter().map(|r| r.n as f64).collect();
    fit_loglog(&ns, &result.means())
}
