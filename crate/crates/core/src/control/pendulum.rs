use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::noise::NoiseModel;

/// Angle `q` (rad) and angular velocity `q̇` (rad/s).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PendulumState {
    pub q: f64,
    pub q_dot: f64,
}

impl PendulumState {
    pub fn new(q: f64, q_dot: f64) -> Self {
        Self { q, q_dot }
    }

    pub fn as_array(&self) -> [f64; 2] {
        [self.q, self.q_dot]
    }
}

impl From<[f64; 2]> for PendulumState {
    fn from(x: [f64; 2]) -> Self {
        Self {
            q: x[0],
            q_dot: x[1],
        }
    }
}

/// Row-major 2×2 matrix.
pub type Matrix2 = [[f64; 2]; 2];

/// Unknown part of the angular acceleration, `f(x) = −sin q − q̇`.
pub fn pendulum_true_dynamics(state: PendulumState) -> f64 {
    -state.q.sin() - state.q_dot
}

/// Explicit Euler step of `q̈ = f(x) + u`. The plant itself is noise-free.
pub fn pendulum_step(state: PendulumState, u: f64, delta: f64) -> PendulumState {
    let acc = pendulum_true_dynamics(state) + u;
    PendulumState {
        q: state.q + delta * state.q_dot,
        q_dot: state.q_dot + delta * acc,
    }
}

/// Noisy acceleration measurement `f(x) + u + e`.
pub fn observe_acceleration<R: Rng + ?Sized>(
    state: PendulumState,
    u: f64,
    noise: &NoiseModel,
    rng: &mut R,
) -> f64 {
    pendulum_true_dynamics(state) + u + noise.sample(rng)
}

/// Set-point-relative MRAC law `u = −f̂(x) + K₁ζ₁ + K₂ζ₂` with `ζ = ξ − x`,
/// i.e. `−f̂(x) − K₁(q − ξ₁) − K₂(q̇ − ξ₂)`.
pub fn control_law(state: PendulumState, f_hat: f64, setpoint: [f64; 2], k1: f64, k2: f64) -> f64 {
    -f_hat - k1 * (state.q - setpoint[0]) - k2 * (state.q_dot - setpoint[1])
}

/// Tracking-error map `M = [[1, Δ], [−ΔK₁, 1 − ΔK₂]]`.
pub fn closed_loop_matrix(delta: f64, k1: f64, k2: f64) -> Matrix2 {
    [[1.0, delta], [-delta * k1, 1.0 - delta * k2]]
}

/// Largest eigenvalue modulus, from the characteristic polynomial
/// `λ² − tr·λ + det`.
pub fn spectral_radius(m: Matrix2) -> f64 {
    let tr = m[0][0] + m[1][1];
    let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    let disc = tr * tr - 4.0 * det;
    if disc >= 0.0 {
        let root = disc.sqrt();
        ((tr + root) / 2.0).abs().max(((tr - root) / 2.0).abs())
    } else {
        // complex pair with |λ|² = det
        det.sqrt()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seed::rng_from_seed;
    use std::f64::consts::{FRAC_PI_2, PI};

    #[test]
    fn true_dynamics_examples() {
        assert_eq!(pendulum_true_dynamics(PendulumState::new(0.0, 0.0)), 0.0);
        assert_eq!(
            pendulum_true_dynamics(PendulumState::new(FRAC_PI_2, 0.0)),
            -1.0
        );
        assert_eq!(pendulum_true_dynamics(PendulumState::new(0.0, 1.0)), -1.0);
    }

    #[test]
    fn euler_step_examples() {
        assert_eq!(
            pendulum_step(PendulumState::new(0.0, 0.0), 0.0, 0.1),
            PendulumState::new(0.0, 0.0)
        );
        let s = pendulum_step(PendulumState::new(FRAC_PI_2, 0.0), 0.0, 0.1);
        assert_eq!(s.q, FRAC_PI_2);
        assert!((s.q_dot + 0.1).abs() < 1e-15);
        let s = pendulum_step(PendulumState::new(0.0, 1.0), 0.0, 0.1);
        assert!((s.q - 0.1).abs() < 1e-15 && (s.q_dot - 0.9).abs() < 1e-15);
    }

    #[test]
    fn observation_examples() {
        let x = PendulumState::new(0.3, -0.2);
        let exact = pendulum_true_dynamics(x) + 1.5;
        let mut rng = rng_from_seed(1);
        assert_eq!(
            observe_acceleration(x, 1.5, &NoiseModel::none(), &mut rng),
            exact
        );
        let noise = NoiseModel::uniform(2.0).unwrap();
        let obs: Vec<f64> = (0..1000)
            .map(|_| observe_acceleration(x, 1.5, &noise, &mut rng))
            .collect();
        assert!(obs.iter().all(|o| (o - exact).abs() <= 2.0));
        let mut a = rng_from_seed(5);
        let mut b = rng_from_seed(5);
        for _ in 0..10 {
            assert_eq!(
                observe_acceleration(x, 0.0, &noise, &mut a),
                observe_acceleration(x, 0.0, &noise, &mut b)
            );
        }
    }

    #[test]
    fn control_law_examples() {
        let sp = [2.0 * PI, 0.0];
        assert_eq!(
            control_law(PendulumState::new(2.0 * PI, 0.0), 0.0, sp, 1.0, 1.0),
            0.0
        );
        assert_eq!(
            control_law(PendulumState::new(0.0, 0.0), 0.0, sp, 1.0, 1.0),
            2.0 * PI
        );
        assert_eq!(
            control_law(PendulumState::new(0.0, 0.0), -1.0, sp, 1.0, 1.0),
            1.0 + 2.0 * PI
        );
    }

    #[test]
    fn matrix_examples() {
        assert_eq!(closed_loop_matrix(0.1, 1.0, 1.0), [[1.0, 0.1], [-0.1, 0.9]]);
        assert_eq!(closed_loop_matrix(0.0, 3.0, 7.0), [[1.0, 0.0], [-0.0, 1.0]]);
        assert_eq!(closed_loop_matrix(1.0, 0.0, 0.0), [[1.0, 1.0], [-0.0, 1.0]]);
    }

    #[test]
    fn spectral_radius_examples() {
        assert_eq!(spectral_radius([[1.0, 0.0], [0.0, 1.0]]), 1.0);
        assert!((spectral_radius([[1.0, 0.1], [-0.1, 0.9]]) - 0.91f64.sqrt()).abs() < 1e-12);
        assert_eq!(spectral_radius([[0.5, 0.0], [0.0, -0.8]]), 0.8);
    }

    #[test]
    fn spectral_radius_matches_power_iteration() {
        // Oracle: ‖Mᵏ‖^{1/k} → ρ(M) (Gelfand's formula).
        let mats: [Matrix2; 4] = [
            [[1.0, 0.1], [-0.1, 0.9]],
            [[0.3, 2.0], [0.1, -0.4]],
            [[0.0, 1.0], [-0.5, 0.2]],
            [[1.2, -0.7], [0.4, 0.1]],
        ];
        for m in mats {
            let mut p = m;
            let k = 4000;
            let mut log_scale = 0.0;
            for _ in 1..k {
                let q = [
                    [
                        p[0][0] * m[0][0] + p[0][1] * m[1][0],
                        p[0][0] * m[0][1] + p[0][1] * m[1][1],
                    ],
                    [
                        p[1][0] * m[0][0] + p[1][1] * m[1][0],
                        p[1][0] * m[0][1] + p[1][1] * m[1][1],
                    ],
                ];
                let norm = q.iter().flatten().fold(0.0f64, |a, v| a.max(v.abs()));
                log_scale += norm.ln();
                p = q.map(|r| r.map(|v| v / norm));
            }
            let norm = p.iter().flatten().fold(0.0f64, |a, v| a.max(v.abs()));
            let estimate = ((log_scale + norm.ln()) / k as f64).exp();
            assert!(
                (estimate - spectral_radius(m)).abs() < 2e-3,
                "{m:?}: {estimate}"
            );
        }
    }
}
