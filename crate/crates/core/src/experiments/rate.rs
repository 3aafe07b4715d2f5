//! Theoretical sup-norm rate `aₙ = (log n / n)^{α/(d+ηα)}` and the
//! comparison against the `α/(d+2α)` exponent of classical estimators.

use serde::{Deserialize, Serialize};

use crate::error::{LiError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RateSpec {
    pub d: usize,
    pub alpha: f64,
    pub eta: f64,
}

impl RateSpec {
    pub fn new(d: usize, alpha: f64, eta: f64) -> Result<Self> {
        let spec = Self { d, alpha, eta };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if self.d == 0 {
            return Err(LiError::invalid("dimension must be at least 1"));
        }
        if !(self.alpha > 0.0 && self.alpha <= 1.0) {
            return Err(LiError::invalid(format!(
                "alpha must lie in (0, 1], got {}",
                self.alpha
            )));
        }
        if !self.eta.is_finite() || self.eta <= 0.0 {
            return Err(LiError::invalid(format!(
                "eta must be positive, got {}",
                self.eta
            )));
        }
        Ok(())
    }

    /// `α / (d + ηα)`.
    pub fn exponent(&self) -> f64 {
        self.alpha / (self.d as f64 + self.eta * self.alpha)
    }

    /// `aₙ` for `n ≥ 2` (at `n = 1` the logarithm vanishes).
    pub fn rate(&self, n: usize) -> Result<f64> {
        if n < 2 {
            return Err(LiError::invalid("the rate is defined for n >= 2"));
        }
        let n = n as f64;
        Ok((n.ln() / n).powf(self.exponent()))
    }
}

/// Validated exponent and the rate function `n ↦ (log n / n)^exponent`.
pub fn theoretical_rate(spec: RateSpec) -> Result<(f64, impl Fn(usize) -> Result<f64>)> {
    spec.validate()?;
    Ok((spec.exponent(), move |n| spec.rate(n)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EtaComparison {
    LiFaster,
    Comparable,
    LiSlower,
}

/// Classifies the exponent `α/(d+ηα)` against `α/(d+2α)`.
pub fn eta_condition(spec: RateSpec) -> Result<EtaComparison> {
    spec.validate()?;
    let li = spec.exponent();
    let reference = RateSpec { eta: 2.0, ..spec }.exponent();
    Ok(if li > reference {
        EtaComparison::LiFaster
    } else if li < reference {
        EtaComparison::LiSlower
    } else {
        EtaComparison::Comparable
    })
}
