use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::study::{draw_dataset, ConvergenceStudyConfig};
use crate::data::format_f64;
use crate::error::{LiError, Result};
use crate::io::{csv_bytes, csv_records, field_f64, field_usize};
use crate::lacki::LackiState;

/// A convergence study configuration plus the LACKI offset λ.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LackiStudyConfig {
    #[serde(flatten)]
    pub study: ConvergenceStudyConfig,
    /// Defaults to `2ē` of the configured noise model.
    #[serde(default)]
    pub lambda: Option<f64>,
}

impl LackiStudyConfig {
    pub fn resolved_lambda(&self) -> Result<f64> {
        let lambda = self.lambda.unwrap_or(2.0 * self.study.noise.e_bar());
        if !lambda.is_finite() || lambda < 0.0 {
            return Err(LiError::config(format!(
                "lambda must be nonnegative, got {lambda}"
            )));
        }
        Ok(lambda)
    }

    pub fn best_lipschitz(&self) -> Result<f64> {
        self.study
            .target
            .best_lipschitz(&self.study.metric)
            .ok_or_else(|| LiError::config("the target's best constant is unknown for this metric"))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LackiStudyRow {
    pub n: usize,
    /// `L(n)` per repetition.
    pub estimates: Vec<f64>,
}

impl LackiStudyRow {
    pub fn mean_estimate(&self) -> f64 {
        self.estimates.iter().sum::<f64>() / self.estimates.len() as f64
    }

    pub fn mean_abs_error(&self, l_star: f64) -> f64 {
        self.estimates
            .iter()
            .map(|l| (l - l_star).abs())
            .sum::<f64>()
            / self.estimates.len() as f64
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LackiStudyResult {
    pub l_star: f64,
    pub rows: Vec<LackiStudyRow>,
}

const REPS_HEADER: [&str; 4] = ["n", "rep", "l_estimate", "abs_error"];
const SUMMARY_HEADER: [&str; 3] = ["n", "mean_l", "mean_abs_error"];

impl LackiStudyResult {
    /// `L(n)` trajectory of one repetition.
    pub fn trajectory(&self, rep: usize) -> Vec<f64> {
        self.rows.iter().map(|r| r.estimates[rep]).collect()
    }

    pub fn reps_csv(&self) -> Result<Vec<u8>> {
        let l_star = self.l_star;
        let rows = self.rows.iter().flat_map(|r| {
            r.estimates.iter().enumerate().map(move |(rep, l)| {
                vec![
                    r.n.to_string(),
                    rep.to_string(),
                    format_f64(*l),
                    format_f64((l - l_star).abs()),
                ]
            })
        });
        csv_bytes(&REPS_HEADER, rows)
    }

    pub fn summary_csv(&self) -> Result<Vec<u8>> {
        let rows = self.rows.iter().map(|r| {
            vec![
                r.n.to_string(),
                format_f64(r.mean_estimate()),
                format_f64(r.mean_abs_error(self.l_star)),
            ]
        });
        csv_bytes(&SUMMARY_HEADER, rows)
    }

    /// Rebuilds a result from [`Self::reps_csv`] output and the known `L*`.
    pub fn from_reps_csv(bytes: &[u8], l_star: f64) -> Result<Self> {
        let mut rows: Vec<LackiStudyRow> = Vec::new();
        for (i, rec) in csv_records(bytes, &REPS_HEADER)?.iter().enumerate() {
            let n = field_usize(rec, 0, i + 1)?;
            let rep = field_usize(rec, 1, i + 1)?;
            let l = field_f64(rec, 2, i + 1)?;
            match rows.last_mut() {
                Some(row) if row.n == n && rep == row.estimates.len() => row.estimates.push(l),
                _ if rep == 0 => rows.push(LackiStudyRow {
                    n,
                    estimates: vec![l],
                }),
                _ => {
                    return Err(LiError::invalid(format!(
                        "row {}: repetitions out of order",
                        i + 1
                    )))
                }
            }
        }
        Ok(Self { l_star, rows })
    }
}

/// Tracks `L(n)` along one nested sample sequence per repetition.
///
/// Each repetition draws `max(sample_sizes)` samples once and records the
/// incremental estimate at every requested size, so the data sets are
/// nested exactly as in the online setting.
pub fn run_lacki_study(config: &LackiStudyConfig) -> Result<LackiStudyResult> {
    let study = &config.study;
    study.validate()?;
    let lambda = config.resolved_lambda()?;
    let l_star = config.best_lipschitz()?;
    let n_max = *study.sample_sizes.last().expect("validated nonempty");

    let per_rep: Vec<Vec<f64>> = (0..study.repetitions)
        .into_par_iter()
        .map(|rep| {
            let data = draw_dataset(study.target, &study.noise, n_max, study.seed, rep);
            let mut state =
                LackiState::new(data.dim(), study.metric, lambda).expect("validated lambda");
            let mut out = Vec::with_capacity(study.sample_sizes.len());
            let mut next = study.sample_sizes.iter().peekable();
            for (i, (x, y)) in data.iter().enumerate() {
                state.update(x, y).expect("dimension matches");
                if next.peek().is_some_and(|&&n| n == i + 1) {
                    out.push(state.lipschitz());
                    next.next();
                }
            }
            out
        })
        .collect();

    let rows = study
        .sample_sizes
        .iter()
        .enumerate()
        .map(|(k, &n)| LackiStudyRow {
            n,
            estimates: per_rep.iter().map(|r| r[k]).collect(),
        })
        .collect();
    Ok(LackiStudyResult { l_star, rows })
}
