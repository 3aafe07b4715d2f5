//! Registry of study target functions with known best Lipschitz constants.

use serde::{Deserialize, Serialize};

use crate::metric::{HolderMetric, NormOrder};

/// Largest `|f'|` of `√x·sin(2x²) + 0.5x` on `[0, 2]`, from a dense
/// numerical maximisation (attained near `x ≈ 1.79403`), rounded up.
pub const CHIRP_BEST_LIPSCHITZ: f64 = 10.055_413_6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Target {
    /// `√x·sin(2x²) + 0.5x` on `[0, 2]`.
    Chirp,
    /// `sin x` on `[0, π]`.
    Sine,
    /// `sin x₀ + cos x₁` on `[0, 2]²`.
    Ridge2d,
}

impl Target {
    pub fn dim(&self) -> usize {
        match self {
            Target::Chirp | Target::Sine => 1,
            Target::Ridge2d => 2,
        }
    }

    pub fn domain(&self) -> Vec<(f64, f64)> {
        match self {
            Target::Chirp => vec![(0.0, 2.0)],
            Target::Sine => vec![(0.0, std::f64::consts::PI)],
            Target::Ridge2d => vec![(0.0, 2.0), (0.0, 2.0)],
        }
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        match self {
            Target::Chirp => {
                let x = x[0];
                x.sqrt() * (2.0 * x * x).sin() + 0.5 * x
            }
            Target::Sine => x[0].sin(),
            Target::Ridge2d => x[0].sin() + x[1].cos(),
        }
    }

    /// Best Lipschitz constant with respect to `metric`, where known.
    ///
    /// Only `α = 1` metrics are covered. For the 2-D target the constant is
    /// the supremum of the dual norm of the gradient, `2^{(p−1)/p}`.
    pub fn best_lipschitz(&self, metric: &HolderMetric) -> Option<f64> {
        if metric.alpha() != 1.0 {
            return None;
        }
        match self {
            Target::Chirp => Some(CHIRP_BEST_LIPSCHITZ),
            Target::Sine => Some(1.0),
            Target::Ridge2d => Some(match metric.p() {
                NormOrder::Infinity => 2.0,
                NormOrder::Finite(p) => 2f64.powf((p as f64 - 1.0) / p as f64),
            }),
        }
    }

    /// Default sup-norm grid size.
    pub fn default_grid_points(&self) -> usize {
        match self.dim() {
            1 => 2000,
            _ => 10_000,
        }
    }

    /// Uniform evaluation grid. In two dimensions a square lattice with
    /// `⌈√points⌉` nodes per axis is used.
    pub fn grid(&self, points: usize) -> Vec<Vec<f64>> {
        let domain = self.domain();
        let per_axis = if domain.len() == 1 {
            points
        } else {
            (points as f64).powf(1.0 / domain.len() as f64).ceil() as usize
        };
        let axes: Vec<Vec<f64>> = domain
            .iter()
            .map(|&(a, b)| linspace(a, b, per_axis))
            .collect();
        let mut grid: Vec<Vec<f64>> = vec![Vec::new()];
        for axis in &axes {
            grid = grid
                .into_iter()
                .flat_map(|prefix| {
                    axis.iter().map(move |&v| {
                        let mut p = prefix.clone();
                        p.push(v);
                        p
                    })
                })
                .collect();
        }
        grid
    }
}

pub(crate) fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![a],
        _ => (0..n)
            .map(|i| a + (b - a) * i as f64 / (n - 1) as f64)
            .collect(),
    }
}
