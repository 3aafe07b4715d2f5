//! Bounded noise models with a controllable boundary exponent η.
//!
//! Every model draws from `[−ē, ē]`. For the kinds with closed-form tails
//! (`uniform`, `power_boundary`) the upper-tail mass `P(e > ē − ε)` is
//! available exactly, which allows checking `P(e > ē − ε) ≥ γ·ε^η`.

use rand::Rng;
use rand_distr::{Distribution, Normal, Weibull};
use serde::{Deserialize, Serialize};

use crate::error::{LiError, Result};

/// Parameters of the two-component truncated Weibull mixture.
///
/// The upper component is `ē − W₊` and the lower one `−ē + W₋`, each `W`
/// truncated to `[0, 2ē]`. The shape of each component sets the boundary
/// exponent at the corresponding end of the support.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WeibullMixture {
    pub weight_upper: f64,
    pub shape_upper: f64,
    pub scale_upper: f64,
    pub shape_lower: f64,
    pub scale_lower: f64,
}

impl WeibullMixture {
    /// Illustrative defaults scaled to the support bound.
    pub fn illustrative(e_bar: f64) -> Self {
        Self {
            weight_upper: 0.5,
            shape_upper: 1.5,
            scale_upper: 0.5 * e_bar,
            shape_lower: 3.0,
            scale_lower: e_bar,
        }
    }

    fn validate(&self) -> Result<()> {
        let positive = [
            self.shape_upper,
            self.scale_upper,
            self.shape_lower,
            self.scale_lower,
        ];
        if positive.iter().any(|v| !v.is_finite() || *v <= 0.0) {
            return Err(LiError::invalid(
                "Weibull shapes and scales must be positive",
            ));
        }
        if !(0.0..=1.0).contains(&self.weight_upper) {
            return Err(LiError::invalid(
                "Weibull mixture weight must lie in [0, 1]",
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum NoiseKind {
    /// Noise-free observations.
    None,
    Uniform,
    TruncatedGaussian {
        sigma: f64,
    },
    PowerBoundary {
        eta: f64,
    },
    WeibullMixture(WeibullMixture),
}

/// A bounded noise distribution on `[−ē, ē]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "NoiseSpec", into = "NoiseSpec")]
pub struct NoiseModel {
    kind: NoiseKind,
    e_bar: f64,
}

fn check_e_bar(e_bar: f64) -> Result<()> {
    if !e_bar.is_finite() || e_bar <= 0.0 {
        return Err(LiError::invalid(format!(
            "noise bound must be positive, got {e_bar}"
        )));
    }
    Ok(())
}

impl NoiseModel {
    pub fn none() -> Self {
        Self {
            kind: NoiseKind::None,
            e_bar: 0.0,
        }
    }

    pub fn uniform(e_bar: f64) -> Result<Self> {
        check_e_bar(e_bar)?;
        Ok(Self {
            kind: NoiseKind::Uniform,
            e_bar,
        })
    }

    /// Gaussian with standard deviation `sigma` (default `ē`) conditioned on `[−ē, ē]`.
    pub fn truncated_gaussian(e_bar: f64, sigma: Option<f64>) -> Result<Self> {
        check_e_bar(e_bar)?;
        let sigma = sigma.unwrap_or(e_bar);
        if !sigma.is_finite() || sigma <= 0.0 {
            return Err(LiError::invalid(format!(
                "sigma must be positive, got {sigma}"
            )));
        }
        Ok(Self {
            kind: NoiseKind::TruncatedGaussian { sigma },
            e_bar,
        })
    }

    /// `e = S·ē·(1 − U^{1/η})` with a random sign `S`; exact tail
    /// `P(e > ē − ε) = ½(ε/ē)^η`.
    pub fn power_boundary(e_bar: f64, eta: f64) -> Result<Self> {
        check_e_bar(e_bar)?;
        if !eta.is_finite() || eta <= 0.0 {
            return Err(LiError::invalid(format!("eta must be positive, got {eta}")));
        }
        Ok(Self {
            kind: NoiseKind::PowerBoundary { eta },
            e_bar,
        })
    }

    pub fn weibull_mixture(e_bar: f64, params: WeibullMixture) -> Result<Self> {
        check_e_bar(e_bar)?;
        params.validate()?;
        Ok(Self {
            kind: NoiseKind::WeibullMixture(params),
            e_bar,
        })
    }

    pub fn kind(&self) -> NoiseKind {
        self.kind
    }

    pub fn e_bar(&self) -> f64 {
        self.e_bar
    }

    /// Boundary exponent, where one is known.
    pub fn eta(&self) -> Option<f64> {
        match self.kind {
            NoiseKind::Uniform | NoiseKind::TruncatedGaussian { .. } => Some(1.0),
            NoiseKind::PowerBoundary { eta } => Some(eta),
            NoiseKind::None | NoiseKind::WeibullMixture(_) => None,
        }
    }

    /// Boundary constant γ for the kinds with closed-form tails.
    pub fn gamma(&self) -> Option<f64> {
        match self.kind {
            NoiseKind::Uniform => Some(1.0 / (2.0 * self.e_bar)),
            NoiseKind::PowerBoundary { eta } => Some(1.0 / (2.0 * self.e_bar.powf(eta))),
            _ => None,
        }
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        let e_bar = self.e_bar;
        match self.kind {
            NoiseKind::None => 0.0,
            NoiseKind::Uniform => rng.random_range(-e_bar..=e_bar),
            NoiseKind::TruncatedGaussian { sigma } => {
                let normal = Normal::new(0.0, sigma).expect("validated sigma");
                loop {
                    let z: f64 = normal.sample(rng);
                    if z.abs() <= e_bar {
                        break z;
                    }
                }
            }
            NoiseKind::PowerBoundary { eta } => {
                let sign = if rng.random::<bool>() { 1.0 } else { -1.0 };
                let u: f64 = rng.random();
                sign * e_bar * (1.0 - u.powf(1.0 / eta))
            }
            NoiseKind::WeibullMixture(p) => {
                let upper = rng.random::<f64>() < p.weight_upper;
                let (shape, scale) = if upper {
                    (p.shape_upper, p.scale_upper)
                } else {
                    (p.shape_lower, p.scale_lower)
                };
                let w = Weibull::new(scale, shape).expect("validated Weibull parameters");
                let offset = loop {
                    let v: f64 = w.sample(rng);
                    if v <= 2.0 * e_bar {
                        break v;
                    }
                };
                if upper {
                    e_bar - offset
                } else {
                    -e_bar + offset
                }
            }
        }
    }

    pub fn sample_n<R: Rng + ?Sized>(&self, rng: &mut R, n: usize) -> Vec<f64> {
        (0..n).map(|_| self.sample(rng)).collect()
    }

    /// Exact `P(e > ē − ε)` for `0 < ε ≤ 2ē`. By symmetry this also equals
    /// `P(e < −ē + ε)`.
    pub fn boundary_mass(&self, epsilon: f64) -> Result<f64> {
        let e_bar = self.e_bar;
        let analytic = matches!(
            self.kind,
            NoiseKind::Uniform | NoiseKind::PowerBoundary { .. }
        );
        if !analytic {
            return Err(LiError::Unsupported(format!(
                "no closed-form boundary mass for {:?} noise",
                self.kind
            )));
        }
        if !(epsilon > 0.0 && epsilon <= 2.0 * e_bar) {
            return Err(LiError::invalid(format!(
                "epsilon must lie in (0, {}], got {epsilon}",
                2.0 * e_bar
            )));
        }
        Ok(match self.kind {
            NoiseKind::Uniform => epsilon / (2.0 * e_bar),
            NoiseKind::PowerBoundary { eta } => {
                if epsilon <= e_bar {
                    0.5 * (epsilon / e_bar).powf(eta)
                } else {
                    1.0 - 0.5 * ((2.0 * e_bar - epsilon) / e_bar).powf(eta)
                }
            }
            _ => unreachable!(),
        })
    }
}

/// Serialized form: `{kind, e_bar, eta?, sigma?, params?}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NoiseSpec {
    pub kind: NoiseKindTag,
    #[serde(default)]
    pub e_bar: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eta: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sigma: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub params: Option<WeibullMixture>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NoiseKindTag {
    None,
    Uniform,
    TruncatedGaussian,
    PowerBoundary,
    WeibullMixture,
}

impl TryFrom<NoiseSpec> for NoiseModel {
    type Error = LiError;
    fn try_from(spec: NoiseSpec) -> Result<Self> {
        match spec.kind {
            NoiseKindTag::None => Ok(NoiseModel::none()),
            NoiseKindTag::Uniform => NoiseModel::uniform(spec.e_bar),
            NoiseKindTag::TruncatedGaussian => {
                NoiseModel::truncated_gaussian(spec.e_bar, spec.sigma)
            }
            NoiseKindTag::PowerBoundary => {
                let eta = spec
                    .eta
                    .ok_or_else(|| LiError::config("power_boundary noise requires eta"))?;
                NoiseModel::power_boundary(spec.e_bar, eta)
            }
            NoiseKindTag::WeibullMixture => {
                let params = spec
                    .params
                    .unwrap_or_else(|| WeibullMixture::illustrative(spec.e_bar));
                NoiseModel::weibull_mixture(spec.e_bar, params)
            }
        }
    }
}

impl From<NoiseModel> for NoiseSpec {
    fn from(m: NoiseModel) -> Self {
        let mut spec = NoiseSpec {
            kind: NoiseKindTag::None,
            e_bar: m.e_bar,
            eta: None,
            sigma: None,
            params: None,
        };
        match m.kind {
            NoiseKind::None => {}
            NoiseKind::Uniform => spec.kind = NoiseKindTag::Uniform,
            NoiseKind::TruncatedGaussian { sigma } => {
                spec.kind = NoiseKindTag::TruncatedGaussian;
                spec.sigma = Some(sigma);
            }
            NoiseKind::PowerBoundary { eta } => {
                spec.kind = NoiseKindTag::PowerBoundary;
                spec.eta = Some(eta);
            }
            NoiseKind::WeibullMixture(p) => {
                spec.kind = NoiseKindTag::WeibullMixture;
                spec.params = Some(p);
            }
        }
        spec
    }
}

/// A claimed tail behaviour `P(e > ē − ε) ≥ γ·ε^η`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TailClaim {
    pub gamma: f64,
    pub eta: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EtaCheckRow {
    pub epsilon: f64,
    pub claimed: f64,
    pub upper_freq: f64,
    pub lower_freq: f64,
    pub margin: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EtaReport {
    pub claim: TailClaim,
    pub n_draws: usize,
    pub rows: Vec<EtaCheckRow>,
}

impl EtaReport {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(|r| r.pass)
    }
}

/// Three-sigma binomial margin for a frequency estimated from `n` draws.
pub fn binomial_margin(p: f64, n: usize) -> f64 {
    3.0 * (p * (1.0 - p) / n as f64).sqrt()
}

/// Empirical check of both boundary tails against a claimed `(γ, η)`.
///
/// Without an explicit claim the model's own analytic `(γ, η)` is used.
pub fn empirical_eta_check<R: Rng + ?Sized>(
    model: &NoiseModel,
    claim: Option<TailClaim>,
    n_draws: usize,
    epsilons: &[f64],
    rng: &mut R,
) -> Result<EtaReport> {
    if n_draws < 10_000 {
        return Err(LiError::invalid(format!(
            "need at least 10000 draws, got {n_draws}"
        )));
    }
    let claim = match claim {
        Some(c) => c,
        None => match (model.gamma(), model.eta()) {
            (Some(gamma), Some(eta)) => TailClaim { gamma, eta },
            _ => {
                return Err(LiError::Unsupported(
                    "model has no analytic (gamma, eta); supply a claim".into(),
                ))
            }
        },
    };
    let e_bar = model.e_bar();
    if let Some(bad) = epsilons.iter().find(|&&e| !(e > 0.0 && e <= 2.0 * e_bar)) {
        return Err(LiError::invalid(format!("epsilon {bad} outside (0, 2ē]")));
    }
    let draws = model.sample_n(rng, n_draws);
    let rows = epsilons
        .iter()
        .map(|&epsilon| {
            let upper = draws.iter().filter(|&&e| e > e_bar - epsilon).count();
            let lower = draws.iter().filter(|&&e| e < -e_bar + epsilon).count();
            let upper_freq = upper as f64 / n_draws as f64;
            let lower_freq = lower as f64 / n_draws as f64;
            let claimed = (claim.gamma * epsilon.powf(claim.eta)).min(1.0);
            let margin = binomial_margin(claimed, n_draws);
            let pass = upper_freq >= claimed - margin && lower_freq >= claimed - margin;
            EtaCheckRow {
                epsilon,
                claimed,
                upper_freq,
                lower_freq,
                margin,
                pass,
            }
        })
        .collect();
    Ok(EtaReport {
        claim,
        n_draws,
        rows,
    })
}
