//! The Lipschitz interpolation predictor and its worst-case envelopes.
//!
//! For data `(sᵢ, f̃ᵢ)`, metric `d` and constant `L`:
//!
//! * ceiling `u(x) = minᵢ f̃ᵢ + L·d(x, sᵢ)`
//! * floor   `l(x) = maxᵢ f̃ᵢ − L·d(x, sᵢ)`
//! * predictor `f̂(x) = ½u(x) + ½l(x)`
//!
//! Queries are a linear scan over the samples.

use serde::{Deserialize, Serialize};

use crate::data::{MultiOutputSampleSet, SampleSet};
use crate::error::{LiError, Result};
use crate::metric::HolderMetric;

/// Floor and ceiling at one query point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bounds {
    pub floor: f64,
    pub ceiling: f64,
}

impl Bounds {
    pub fn midpoint(&self) -> f64 {
        0.5 * self.ceiling + 0.5 * self.floor
    }
}

/// Predictor configuration: metric, Lipschitz hyperparameter and optional
/// noise bounds used by the envelope estimators.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LipschitzInterpolator {
    metric: HolderMetric,
    lipschitz: f64,
    noise_bound: Option<f64>,
    noise_bounds_asym: Option<(f64, f64)>,
}

impl LipschitzInterpolator {
    pub fn new(metric: HolderMetric, lipschitz: f64) -> Result<Self> {
        if !lipschitz.is_finite() || lipschitz < 0.0 {
            return Err(LiError::invalid(format!(
                "Lipschitz constant must be finite and nonnegative, got {lipschitz}"
            )));
        }
        Ok(Self {
            metric,
            lipschitz,
            noise_bound: None,
            noise_bounds_asym: None,
        })
    }

    /// Sets the symmetric noise bound `ē` used by [`Self::envelope`].
    pub fn with_noise_bound(mut self, e_bar: f64) -> Result<Self> {
        if !e_bar.is_finite() || e_bar < 0.0 {
            return Err(LiError::invalid(format!(
                "noise bound must be nonnegative, got {e_bar}"
            )));
        }
        self.noise_bound = Some(e_bar);
        Ok(self)
    }

    /// Sets asymmetric noise bounds `lower < 0 < upper`.
    pub fn with_asymmetric_bounds(mut self, lower: f64, upper: f64) -> Result<Self> {
        if !(lower < 0.0 && upper > 0.0) || !lower.is_finite() || !upper.is_finite() {
            return Err(LiError::invalid(format!(
                "asymmetric noise bounds need lower < 0 < upper, got ({lower}, {upper})"
            )));
        }
        self.noise_bounds_asym = Some((lower, upper));
        Ok(self)
    }

    pub fn metric(&self) -> &HolderMetric {
        &self.metric
    }

    pub fn lipschitz(&self) -> f64 {
        self.lipschitz
    }

    pub fn noise_bound(&self) -> Option<f64> {
        self.noise_bound
    }

    pub fn noise_bounds_asym(&self) -> Option<(f64, f64)> {
        self.noise_bounds_asym
    }

    /// Same configuration with a different Lipschitz constant.
    pub fn with_lipschitz(mut self, lipschitz: f64) -> Result<Self> {
        let checked = Self::new(self.metric, lipschitz)?;
        self.lipschitz = checked.lipschitz;
        Ok(self)
    }

    fn check_query(&self, x: &[f64], data: &SampleSet) -> Result<()> {
        if data.is_empty() {
            return Err(LiError::EmptyData);
        }
        if x.len() != data.dim() {
            return Err(LiError::DimensionMismatch {
                expected: data.dim(),
                found: x.len(),
            });
        }
        Ok(())
    }

    /// Ceiling and floor in a single pass over the data.
    pub fn bounds(&self, x: &[f64], data: &SampleSet) -> Result<Bounds> {
        self.check_query(x, data)?;
        let mut ceiling = f64::INFINITY;
        let mut floor = f64::NEG_INFINITY;
        for (s, y) in data.iter() {
            let reach = self.lipschitz * self.metric.distance_unchecked(x, s);
            ceiling = ceiling.min(y + reach);
            floor = floor.max(y - reach);
        }
        Ok(Bounds { floor, ceiling })
    }

    pub fn ceiling(&self, x: &[f64], data: &SampleSet) -> Result<f64> {
        self.check_query(x, data)?;
        Ok(data
            .iter()
            .map(|(s, y)| y + self.lipschitz * self.metric.distance_unchecked(x, s))
            .fold(f64::INFINITY, f64::min))
    }

    pub fn floor(&self, x: &[f64], data: &SampleSet) -> Result<f64> {
        self.check_query(x, data)?;
        Ok(data
            .iter()
            .map(|(s, y)| y - self.lipschitz * self.metric.distance_unchecked(x, s))
            .fold(f64::NEG_INFINITY, f64::max))
    }

    pub fn predict(&self, x: &[f64], data: &SampleSet) -> Result<f64> {
        Ok(self.bounds(x, data)?.midpoint())
    }

    /// Worst-case envelope `(floor − ē, ceiling + ē)`.
    pub fn envelope(&self, x: &[f64], data: &SampleSet) -> Result<(f64, f64)> {
        let e_bar = self
            .noise_bound
            .ok_or_else(|| LiError::config("envelope requires a symmetric noise bound"))?;
        let b = self.bounds(x, data)?;
        Ok((b.floor - e_bar, b.ceiling + e_bar))
    }

    /// Boundary-regression pair `(floor − ē₁ − ē₂, ceiling + ē₁ + ē₂)` for
    /// asymmetric bounds `ē₁ < 0 < ē₂`.
    ///
    /// The shift is the literal sum `ē₁ + ē₂`; for symmetric bounds it
    /// vanishes and the pair reduces to `(floor, ceiling)`.
    pub fn boundary_estimators(&self, x: &[f64], data: &SampleSet) -> Result<(f64, f64)> {
        let (lo, hi) = self.noise_bounds_asym.ok_or_else(|| {
            LiError::config("boundary estimators require asymmetric noise bounds")
        })?;
        let b = self.bounds(x, data)?;
        Ok((b.floor - lo - hi, b.ceiling + lo + hi))
    }

    /// Component-wise prediction with a shared Lipschitz constant.
    pub fn predict_multi(&self, x: &[f64], data: &MultiOutputSampleSet) -> Result<Vec<f64>> {
        if data.is_empty() {
            return Err(LiError::EmptyData);
        }
        if x.len() != data.dim_in() {
            return Err(LiError::DimensionMismatch {
                expected: data.dim_in(),
                found: x.len(),
            });
        }
        let l = data.dim_out();
        let mut ceiling = vec![f64::INFINITY; l];
        let mut floor = vec![f64::NEG_INFINITY; l];
        for i in 0..data.len() {
            let reach = self.lipschitz * self.metric.distance_unchecked(x, data.input(i));
            for (j, &y) in data.output(i).iter().enumerate() {
                ceiling[j] = ceiling[j].min(y + reach);
                floor[j] = floor[j].max(y - reach);
            }
        }
        Ok(ceiling
            .iter()
            .zip(&floor)
            .map(|(u, l)| 0.5 * u + 0.5 * l)
            .collect())
    }
}

/// Largest absolute discrepancy between two functions over a grid.
pub fn sup_error<P, F>(predictor: P, truth: F, grid: &[Vec<f64>]) -> Result<f64>
where
    P: Fn(&[f64]) -> f64,
    F: Fn(&[f64]) -> f64,
{
    if grid.is_empty() {
        return Err(LiError::invalid("sup error needs a nonempty grid"));
    }
    Ok(grid
        .iter()
        .map(|x| (predictor(x) - truth(x)).abs())
        .fold(0.0, f64::max))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metric::NormOrder;

    fn l1_model(l: f64) -> LipschitzInterpolator {
        let m = HolderMetric::new(NormOrder::Finite(1), 1.0).unwrap();
        LipschitzInterpolator::new(m, l).unwrap()
    }

    fn two_points() -> SampleSet {
        SampleSet::from_scalar_pairs(&[(0.0, 0.0), (1.0, 1.0)])
    }

    #[test]
    fn ceiling_examples() {
        let single = SampleSet::from_scalar_pairs(&[(0.0, 0.0)]);
        let m = l1_model(1.0);
        assert_eq!(m.ceiling(&[2.0], &single).unwrap(), 2.0);
        assert_eq!(m.ceiling(&[0.5], &two_points()).unwrap(), 0.5);
        assert_eq!(m.ceiling(&[2.0], &two_points()).unwrap(), 2.0);
    }

    #[test]
    fn floor_examples() {
        let single = SampleSet::from_scalar_pairs(&[(0.0, 0.0)]);
        let m = l1_model(1.0);
        assert_eq!(m.floor(&[2.0], &single).unwrap(), -2.0);
        assert_eq!(m.floor(&[0.5], &two_points()).unwrap(), 0.5);
        assert_eq!(m.floor(&[2.0], &two_points()).unwrap(), 0.0);
    }

    #[test]
    fn predict_examples() {
        let m = l1_model(1.0);
        let single = SampleSet::from_scalar_pairs(&[(0.0, 7.0)]);
        for x in [-3.0, 0.0, 0.4, 100.0] {
            assert_eq!(m.predict(&[x], &single).unwrap(), 7.0);
        }
        assert_eq!(m.predict(&[0.5], &two_points()).unwrap(), 0.5);
        assert_eq!(m.predict(&[2.0], &two_points()).unwrap(), 1.0);
    }

    #[test]
    fn empty_data_is_an_error() {
        let empty = SampleSet::new(1).unwrap();
        let m = l1_model(1.0);
        assert!(matches!(m.ceiling(&[0.0], &empty), Err(LiError::EmptyData)));
        assert!(matches!(m.floor(&[0.0], &empty), Err(LiError::EmptyData)));
        assert!(matches!(m.predict(&[0.0], &empty), Err(LiError::EmptyData)));
        let multi = MultiOutputSampleSet::new(1, 2).unwrap();
        assert!(matches!(
            m.predict_multi(&[0.0], &multi),
            Err(LiError::EmptyData)
        ));
    }

    #[test]
    fn query_dimension_checked() {
        let m = l1_model(1.0);
        assert!(matches!(
            m.predict(&[0.0, 1.0], &two_points()),
            Err(LiError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn envelope_examples() {
        let single = SampleSet::from_scalar_pairs(&[(0.0, 0.0)]);
        let m = l1_model(1.0).with_noise_bound(0.5).unwrap();
        assert_eq!(m.envelope(&[0.0], &single).unwrap(), (-0.5, 0.5));
        assert_eq!(m.envelope(&[0.5], &two_points()).unwrap(), (0.0, 1.0));
        let m0 = l1_model(1.0).with_noise_bound(0.0).unwrap();
        assert_eq!(m0.envelope(&[0.5], &two_points()).unwrap(), (0.5, 0.5));
    }

    #[test]
    fn envelope_needs_noise_bound() {
        let m = l1_model(1.0);
        assert!(matches!(
            m.envelope(&[0.5], &two_points()),
            Err(LiError::Config(_))
        ));
        assert!(l1_model(1.0).with_noise_bound(-0.1).is_err());
    }

    #[test]
    fn boundary_estimator_examples() {
        let data = two_points();
        let sym = l1_model(1.0).with_asymmetric_bounds(-0.5, 0.5).unwrap();
        let b = sym.bounds(&[0.3], &data).unwrap();
        assert_eq!(
            sym.boundary_estimators(&[0.3], &data).unwrap(),
            (b.floor, b.ceiling)
        );

        let single = SampleSet::from_scalar_pairs(&[(0.0, 0.0)]);
        let m = l1_model(1.0).with_asymmetric_bounds(-0.2, 0.5).unwrap();
        let (lo, hi) = m.boundary_estimators(&[0.0], &single).unwrap();
        assert!((lo + 0.3).abs() < 1e-15 && (hi - 0.3).abs() < 1e-15);

        let m = l1_model(1.0).with_asymmetric_bounds(-0.1, 0.3).unwrap();
        let (lo, hi) = m.boundary_estimators(&[0.5], &data).unwrap();
        assert!((lo - 0.3).abs() < 1e-15, "{lo}");
        assert!((hi - 0.7).abs() < 1e-15, "{hi}");
    }

    #[test]
    fn boundary_estimators_need_asymmetric_bounds() {
        let m = l1_model(1.0).with_noise_bound(0.5).unwrap();
        assert!(matches!(
            m.boundary_estimators(&[0.0], &two_points()),
            Err(LiError::Config(_))
        ));
        assert!(l1_model(1.0).with_asymmetric_bounds(0.1, 0.3).is_err());
        assert!(l1_model(1.0).with_asymmetric_bounds(-0.1, 0.0).is_err());
    }

    #[test]
    fn append_then_predict_moves_to_extreme_midpoint() {
        // Duplicate inputs at 0 with outputs -1, 1 and a far-away sample: with
        // large L the prediction at 0 is the midpoint of the extreme outputs.
        let m = l1_model(1e6);
        let data = SampleSet::from_scalar_pairs(&[(0.0, -1.0), (5.0, 3.0)]);
        assert_eq!(m.predict(&[0.0], &data).unwrap(), -1.0);
        let data = data.with_sample(&[0.0], 1.0).unwrap();
        assert_eq!(data.len(), 3);
        assert_eq!(m.predict(&[0.0], &data).unwrap(), 0.0);
    }

    #[test]
    fn multi_output_examples() {
        let m = l1_model(1.0);
        let mut single = MultiOutputSampleSet::new(1, 2).unwrap();
        single.push(&[0.0], &[1.5, -2.0]).unwrap();
        assert_eq!(m.predict_multi(&[3.0], &single).unwrap(), vec![1.5, -2.0]);

        let mut one = MultiOutputSampleSet::new(1, 1).unwrap();
        one.push(&[0.0], &[0.0]).unwrap();
        one.push(&[1.0], &[1.0]).unwrap();
        for x in [0.5, 2.0, -1.0] {
            assert_eq!(
                m.predict_multi(&[x], &one).unwrap()[0],
                m.predict(&[x], &two_points()).unwrap()
            );
        }

        let mut two = MultiOutputSampleSet::new(1, 2).unwrap();
        two.push(&[0.0], &[0.0, 4.0]).unwrap();
        two.push(&[1.0], &[1.0, 2.0]).unwrap();
        for x in [0.25, 0.5, 1.7] {
            let got = m.predict_multi(&[x], &two).unwrap();
            for (j, g) in got.iter().enumerate() {
                let comp = two.component(j).unwrap();
                assert_eq!(*g, m.predict(&[x], &comp).unwrap());
            }
        }
    }

    #[test]
    fn sup_error_examples() {
        let grid: Vec<Vec<f64>> = vec![vec![0.0], vec![1.0], vec![2.0]];
        assert_eq!(
            sup_error(|x| x[0].sin(), |x| x[0].sin(), &grid).unwrap(),
            0.0
        );
        assert_eq!(sup_error(|_| 0.0, |_| 1.0, &grid).unwrap(), 1.0);
        assert_eq!(sup_error(|x| x[0], |x| 2.0 * x[0], &grid).unwrap(), 2.0);
        assert!(sup_error(|_| 0.0, |_| 0.0, &[]).is_err());
    }

    #[test]
    fn rejects_negative_lipschitz() {
        assert!(LipschitzInterpolator::new(HolderMetric::euclidean(), -1.0).is_err());
        assert!(LipschitzInterpolator::new(HolderMetric::euclidean(), f64::NAN).is_err());
    }
}
