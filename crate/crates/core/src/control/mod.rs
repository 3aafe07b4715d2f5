//! Online learning inside a closed control loop: NARX regressors, the
//! discretised pendulum plant, the model-reference adaptive control law and
//! Monte-Carlo episode runners.

mod episode;
mod narx;
mod pendulum;

pub use episode::{
    run_episode, run_monte_carlo, ControlConfig, DynamicsModel, MonteCarloResult, TraceRow,
    TrackingRecord, TrackingTrace,
};
pub use narx::NarxRegressor;
pub use pendulum::{
    closed_loop_matrix, control_law, observe_acceleration, pendulum_step, pendulum_true_dynamics,
    spectral_radius, Matrix2, PendulumState,
};
