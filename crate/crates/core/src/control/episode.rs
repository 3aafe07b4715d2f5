use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::pendulum::{
    closed_loop_matrix, control_law, observe_acceleration, pendulum_step, pendulum_true_dynamics,
    spectral_radius, PendulumState,
};
use crate::data::{format_f64, SampleSet};
use crate::error::{LiError, Result};
use crate::interpolator::LipschitzInterpolator;
use crate::io::{csv_bytes, csv_records, field_f64, field_usize};
use crate::metric::HolderMetric;
use crate::noise::NoiseModel;
use crate::seed::{derived_rng, SimRng};

/// Model used by the controller to cancel the unknown dynamics.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DynamicsModel {
    /// Online Lipschitz interpolation of the observed accelerations.
    #[default]
    Lipschitz,
    /// Perfect knowledge, `f̂ ≡ f`.
    Oracle,
}

/// Pendulum set-point tracking experiment. Defaults reproduce the standard
/// setting: `Δ = 0.1`, `K₁ = K₂ = 1`, `L = 11`, `U([−2, 2])` noise,
/// `x₀ = [−2, −1]`, `ξ = [2π, 0]`, 300 steps, 30 repetitions.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ControlConfig {
    pub delta: f64,
    pub k1: f64,
    pub k2: f64,
    pub lipschitz: f64,
    pub metric: HolderMetric,
    pub noise: NoiseModel,
    pub x0: [f64; 2],
    pub setpoint: [f64; 2],
    pub steps: usize,
    pub repetitions: usize,
    pub seed: u64,
    pub model: DynamicsModel,
}

impl Default for ControlConfig {
    fn default() -> Self {
        Self {
            delta: 0.1,
            k1: 1.0,
            k2: 1.0,
            lipschitz: 11.0,
            metric: HolderMetric::euclidean(),
            noise: NoiseModel::uniform(2.0).expect("positive bound"),
            x0: [-2.0, -1.0],
            setpoint: [2.0 * std::f64::consts::PI, 0.0],
            steps: 300,
            repetitions: 30,
            seed: 1,
            model: DynamicsModel::Lipschitz,
        }
    }
}

impl ControlConfig {
    pub fn validate(&self) -> Result<()> {
        if !self.delta.is_finite() || self.delta <= 0.0 {
            return Err(LiError::config(format!(
                "delta must be positive, got {}",
                self.delta
            )));
        }
        if !self.lipschitz.is_finite() || self.lipschitz < 0.0 {
            return Err(LiError::config("lipschitz must be finite and nonnegative"));
        }
        if self.x0.iter().chain(&self.setpoint).any(|v| !v.is_finite()) {
            return Err(LiError::config(
                "initial state and set-point must be finite",
            ));
        }
        if self.repetitions == 0 {
            return Err(LiError::config("repetitions must be at least 1"));
        }
        let rho = spectral_radius(self.matrix());
        if rho.is_nan() || rho >= 1.0 {
            return Err(LiError::config(format!(
                "closed-loop matrix is not stable: spectral radius {rho} >= 1"
            )));
        }
        Ok(())
    }

    pub fn matrix(&self) -> [[f64; 2]; 2] {
        closed_loop_matrix(self.delta, self.k1, self.k2)
    }
}

/// One step of a closed-loop run. `u`, `f_hat` and `d_model` are the values
/// computed at this state; for the final record they are not applied.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrackingRecord {
    pub step: usize,
    pub state: PendulumState,
    pub u: f64,
    /// `ξ − x`.
    pub zeta: [f64; 2],
    pub f_hat: f64,
    pub f_true: f64,
    /// `f(xₙ) − f̂ₙ(xₙ)`.
    pub d_model: f64,
}

impl TrackingRecord {
    pub fn err_norm(&self) -> f64 {
        self.zeta[0].hypot(self.zeta[1])
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrackingTrace {
    pub records: Vec<TrackingRecord>,
}

impl TrackingTrace {
    pub fn error_norms(&self) -> Vec<f64> {
        self.records.iter().map(TrackingRecord::err_norm).collect()
    }
}

/// Runs one episode. At each step the controller queries the current model,
/// the acceleration is observed with noise, the pair `(xₙ, f(xₙ) + eₙ)` is
/// appended to the training data and the plant advances. Before any data
/// exists the learned model predicts zero.
pub fn run_episode(config: &ControlConfig, rng: &mut SimRng) -> Result<TrackingTrace> {
    config.validate()?;
    let model = LipschitzInterpolator::new(config.metric, config.lipschitz)?;
    let mut data = SampleSet::with_capacity(2, config.steps)?;
    let mut state = PendulumState::from(config.x0);
    let mut records = Vec::with_capacity(config.steps + 1);

    for step in 0..=config.steps {
        let x = state.as_array();
        let f_true = pendulum_true_dynamics(state);
        let f_hat = match config.model {
            DynamicsModel::Oracle => f_true,
            DynamicsModel::Lipschitz if data.is_empty() => 0.0,
            DynamicsModel::Lipschitz => model.predict(&x, &data)?,
        };
        let u = control_law(state, f_hat, config.setpoint, config.k1, config.k2);
        let zeta = [
            config.setpoint[0] - state.q,
            config.setpoint[1] - state.q_dot,
        ];
        records.push(TrackingRecord {
            step,
            state,
            u,
            zeta,
            f_hat,
            f_true,
            d_model: f_true - f_hat,
        });
        if step == config.steps {
            break;
        }
        let observed = observe_acceleration(state, u, &config.noise, rng);
        data.push(&x, observed - u)?;
        state = pendulum_step(state, u, config.delta);
    }
    Ok(TrackingTrace { records })
}

/// One row of the trace CSV.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraceRow {
    pub rep: usize,
    pub step: usize,
    pub q: f64,
    pub q_dot: f64,
    pub u: f64,
    pub zeta1: f64,
    pub zeta2: f64,
    pub err_norm: f64,
    pub d_model: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MonteCarloResult {
    /// Per-step mean of `‖ζₙ‖` across repetitions.
    pub mean: Vec<f64>,
    /// Per-step sample standard deviation of `‖ζₙ‖` (zero for one repetition).
    pub std: Vec<f64>,
    pub traces: Vec<TrackingTrace>,
}

const TRACE_HEADER: [&str; 9] = [
    "rep", "step", "q", "qdot", "u", "zeta1", "zeta2", "err_norm", "d_model",
];
const SUMMARY_HEADER: [&str; 3] = ["step", "mean_err", "std_err"];

impl MonteCarloResult {
    pub fn error_trajectories(&self) -> Vec<Vec<f64>> {
        self.traces.iter().map(TrackingTrace::error_norms).collect()
    }

    pub fn trace_rows(&self) -> Vec<TraceRow> {
        self.traces
            .iter()
            .enumerate()
            .flat_map(|(rep, t)| {
                t.records.iter().map(move |r| TraceRow {
                    rep,
                    step: r.step,
                    q: r.state.q,
                    q_dot: r.state.q_dot,
                    u: r.u,
                    zeta1: r.zeta[0],
                    zeta2: r.zeta[1],
                    err_norm: r.err_norm(),
                    d_model: r.d_model,
                })
            })
            .collect()
    }

    /// `rep,step,q,qdot,u,zeta1,zeta2,err_norm,d_model`.
    pub fn trace_csv(&self) -> Result<Vec<u8>> {
        let rows = self.trace_rows().into_iter().map(|r| {
            vec![
                r.rep.to_string(),
                r.step.to_string(),
                format_f64(r.q),
                format_f64(r.q_dot),
                format_f64(r.u),
                format_f64(r.zeta1),
                format_f64(r.zeta2),
                format_f64(r.err_norm),
                format_f64(r.d_model),
            ]
        });
        csv_bytes(&TRACE_HEADER, rows)
    }

    pub fn parse_trace_csv(bytes: &[u8]) -> Result<Vec<TraceRow>> {
        csv_records(bytes, &TRACE_HEADER)?
            .iter()
            .enumerate()
            .map(|(i, rec)| {
                let line = i + 1;
                let f = |k| field_f64(rec, k, line);
                Ok(TraceRow {
                    rep: field_usize(rec, 0, line)?,
                    step: field_usize(rec, 1, line)?,
                    q: f(2)?,
                    q_dot: f(3)?,
                    u: f(4)?,
                    zeta1: f(5)?,
                    zeta2: f(6)?,
                    err_norm: f(7)?,
                    d_model: f(8)?,
                })
            })
            .collect()
    }

    /// `step,mean_err,std_err`.
    pub fn summary_csv(&self) -> Result<Vec<u8>> {
        let rows = self
            .mean
            .iter()
            .zip(&self.std)
            .enumerate()
            .map(|(step, (m, s))| vec![step.to_string(), format_f64(*m), format_f64(*s)]);
        csv_bytes(&SUMMARY_HEADER, rows)
    }

    pub fn parse_summary_csv(bytes: &[u8]) -> Result<(Vec<f64>, Vec<f64>)> {
        let mut mean = Vec::new();
        let mut std = Vec::new();
        for (i, rec) in csv_records(bytes, &SUMMARY_HEADER)?.iter().enumerate() {
            if field_usize(rec, 0, i + 1)? != i {
                return Err(LiError::invalid(format!(
                    "row {}: steps out of order",
                    i + 1
                )));
            }
            mean.push(field_f64(rec, 1, i + 1)?);
            std.push(field_f64(rec, 2, i + 1)?);
        }
        Ok((mean, std))
    }
}

/// Independent episodes with sub-seeds derived from `(seed, repetition)`.
pub fn run_monte_carlo(config: &ControlConfig) -> Result<MonteCarloResult> {
    config.validate()?;
    let traces = (0..config.repetitions)
        .into_par_iter()
        .map(|rep| run_episode(config, &mut derived_rng(config.seed, &[rep as u64])))
        .collect::<Result<Vec<_>>>()?;

    let per_rep: Vec<Vec<f64>> = traces.iter().map(TrackingTrace::error_norms).collect();
    let k = per_rep.len() as f64;
    let mut mean = Vec::with_capacity(config.steps + 1);
    let mut std = Vec::with_capacity(config.steps + 1);
    for step in 0..=config.steps {
        let m = per_rep.iter().map(|t| t[step]).sum::<f64>() / k;
        let s = if per_rep.len() > 1 {
            (per_rep.iter().map(|t| (t[step] - m).powi(2)).sum::<f64>() / (k - 1.0)).sqrt()
        } else {
            0.0
        };
        mean.push(m);
        std.push(s);
    }
    Ok(MonteCarloResult { mean, std, traces })
}
