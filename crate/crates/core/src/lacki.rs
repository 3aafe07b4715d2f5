//! Lazily adapted Lipschitz constant estimation (LACKI).
//!
//! `L(n) = max{0, max over pairs with d(s, s') > 0 of (|f̃(s) − f̃(s')| − λ) / d(s, s')}`.
//! With `λ = 2ē` and noise bounded by `ē` the estimate never exceeds the
//! target's best constant.

use crate::data::SampleSet;
use crate::error::{LiError, Result};
use crate::interpolator::LipschitzInterpolator;
use crate::metric::HolderMetric;

fn check_lambda(lambda: f64) -> Result<()> {
    if !lambda.is_finite() || lambda < 0.0 {
        return Err(LiError::invalid(format!(
            "lambda must be finite and nonnegative, got {lambda}"
        )));
    }
    Ok(())
}

/// Batch estimate over every pair of distinct inputs.
pub fn lacki_full(data: &SampleSet, metric: &HolderMetric, lambda: f64) -> Result<f64> {
    check_lambda(lambda)?;
    let mut best = 0.0_f64;
    for i in 0..data.len() {
        best = best.max(scan_against_prefix(data, metric, lambda, i));
    }
    Ok(best)
}

/// Largest slope between sample `i` and samples `0..i`, clipped at zero.
fn scan_against_prefix(data: &SampleSet, metric: &HolderMetric, lambda: f64, i: usize) -> f64 {
    let (si, yi) = (data.input(i), data.output(i));
    let mut best = 0.0_f64;
    for j in 0..i {
        let dist = metric.distance_unchecked(si, data.input(j));
        if dist > 0.0 {
            best = best.max(((yi - data.output(j)).abs() - lambda) / dist);
        }
    }
    best
}

/// Incrementally maintained LACKI estimate together with its data.
#[derive(Debug, Clone)]
pub struct LackiState {
    metric: HolderMetric,
    lambda: f64,
    current_l: f64,
    data: SampleSet,
}

impl LackiState {
    pub fn new(dim: usize, metric: HolderMetric, lambda: f64) -> Result<Self> {
        check_lambda(lambda)?;
        Ok(Self {
            metric,
            lambda,
            current_l: 0.0,
            data: SampleSet::new(dim)?,
        })
    }

    /// State with `λ = 2ē` for a known noise bound `ē`.
    pub fn from_noise_bound(dim: usize, metric: HolderMetric, e_bar: f64) -> Result<Self> {
        Self::new(dim, metric, 2.0 * e_bar)
    }

    /// Seeds the state with existing data (one batch pass).
    pub fn from_data(data: SampleSet, metric: HolderMetric, lambda: f64) -> Result<Self> {
        let current_l = lacki_full(&data, &metric, lambda)?;
        Ok(Self {
            metric,
            lambda,
            current_l,
            data,
        })
    }

    /// Appends a sample; only pairs involving the new sample are scanned.
    pub fn update(&mut self, x: &[f64], y: f64) -> Result<f64> {
        self.data.push(x, y)?;
        let last = self.data.len() - 1;
        let candidate = scan_against_prefix(&self.data, &self.metric, self.lambda, last);
        self.current_l = self.current_l.max(candidate);
        Ok(self.current_l)
    }

    pub fn lipschitz(&self) -> f64 {
        self.current_l
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn metric(&self) -> &HolderMetric {
        &self.metric
    }

    pub fn data(&self) -> &SampleSet {
        &self.data
    }

    /// Interpolator configured with the current estimate.
    pub fn interpolator(&self) -> LipschitzInterpolator {
        LipschitzInterpolator::new(self.metric, self.current_l)
            .expect("LACKI estimate is finite and nonnegative")
    }

    pub fn predict(&self, x: &[f64]) -> Result<f64> {
        self.interpolator().predict(x, &self.data)
    }
}
