//! Hölder input metrics `d(x, y) = ‖x − y‖ₚ^α`.

use serde::{Deserialize, Serialize};

use crate::error::{LiError, Result};

/// Order of the vector norm underlying a [`HolderMetric`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NormOrder {
    Finite(u32),
    Infinity,
}

impl NormOrder {
    /// Converts a real-valued order. Only positive integers and `+∞` are valid.
    pub fn from_f64(p: f64) -> Result<Self> {
        if p == f64::INFINITY {
            Ok(NormOrder::Infinity)
        } else if p.is_finite() && p >= 1.0 && p.fract() == 0.0 && p <= u32::MAX as f64 {
            Ok(NormOrder::Finite(p as u32))
        } else {
            Err(LiError::invalid(format!(
                "norm order must be a positive integer or infinity, got {p}"
            )))
        }
    }

    pub fn as_f64(self) -> f64 {
        match self {
            NormOrder::Finite(p) => p as f64,
            NormOrder::Infinity => f64::INFINITY,
        }
    }
}

impl Serialize for NormOrder {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            NormOrder::Finite(p) => s.serialize_u32(*p),
            NormOrder::Infinity => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for NormOrder {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(f64),
            Text(String),
        }
        let p = match Raw::deserialize(d)? {
            Raw::Num(p) => p,
            Raw::Text(s) => match s.to_ascii_lowercase().as_str() {
                "inf" | "infinity" | "max" => f64::INFINITY,
                other => other
                    .parse::<f64>()
                    .map_err(|_| serde::de::Error::custom(format!("bad norm order {s:?}")))?,
            },
        };
        NormOrder::from_f64(p).map_err(serde::de::Error::custom)
    }
}

/// The input metric `‖x − y‖ₚ^α` with `α ∈ (0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawMetric", into = "RawMetric")]
pub struct HolderMetric {
    p: NormOrder,
    alpha: f64,
}

#[derive(Serialize, Deserialize)]
struct RawMetric {
    #[serde(default = "default_p")]
    p: NormOrder,
    #[serde(default = "default_alpha")]
    alpha: f64,
}

fn default_p() -> NormOrder {
    NormOrder::Finite(2)
}

fn default_alpha() -> f64 {
    1.0
}

impl TryFrom<RawMetric> for HolderMetric {
    type Error = LiError;
    fn try_from(raw: RawMetric) -> Result<Self> {
        HolderMetric::new(raw.p, raw.alpha)
    }
}

impl From<HolderMetric> for RawMetric {
    fn from(m: HolderMetric) -> Self {
        RawMetric {
            p: m.p,
            alpha: m.alpha,
        }
    }
}

impl Default for HolderMetric {
    fn default() -> Self {
        Self::euclidean()
    }
}

impl HolderMetric {
    pub fn new(p: NormOrder, alpha: f64) -> Result<Self> {
        if let NormOrder::Finite(0) = p {
            return Err(LiError::invalid("norm order must be at least 1"));
        }
        if !(alpha > 0.0 && alpha <= 1.0) {
            return Err(LiError::invalid(format!(
                "Hölder exponent must lie in (0, 1], got {alpha}"
            )));
        }
        Ok(Self { p, alpha })
    }

    /// Plain Euclidean distance (`p = 2`, `α = 1`).
    pub fn euclidean() -> Self {
        Self {
            p: NormOrder::Finite(2),
            alpha: 1.0,
        }
    }

    pub fn p(&self) -> NormOrder {
        self.p
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn distance(&self, x: &[f64], y: &[f64]) -> Result<f64> {
        if x.len() != y.len() {
            return Err(LiError::DimensionMismatch {
                expected: x.len(),
                found: y.len(),
            });
        }
        Ok(self.distance_unchecked(x, y))
    }

    /// Distance without the length check; callers guarantee `x.len() == y.len()`.
    #[inline]
    pub(crate) fn distance_unchecked(&self, x: &[f64], y: &[f64]) -> f64 {
        let norm = match self.p {
            NormOrder::Infinity => x
                .iter()
                .zip(y)
                .fold(0.0_f64, |acc, (a, b)| acc.max((a - b).abs())),
            NormOrder::Finite(1) => x.iter().zip(y).map(|(a, b)| (a - b).abs()).sum(),
            NormOrder::Finite(2) => {
                if x.len() == 1 {
                    (x[0] - y[0]).abs()
                } else {
                    x.iter()
                        .zip(y)
                        .map(|(a, b)| (a - b) * (a - b))
                        .sum::<f64>()
                        .sqrt()
                }
            }
            NormOrder::Finite(p) => {
                if x.len() == 1 {
                    (x[0] - y[0]).abs()
                } else {
                    let p = p as i32;
                    x.iter()
                        .zip(y)
                        .map(|(a, b)| (a - b).abs().powi(p))
                        .sum::<f64>()
                        .powf(1.0 / p as f64)
                }
            }
        };
        if self.alpha == 1.0 {
            norm
        } else {
            norm.powf(self.alpha)
        }
    }
}
