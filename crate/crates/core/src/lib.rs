//! Lipschitz interpolation (kinky inference) regression under bounded noise.
//!
//! The crate provides
//!
//! * the interpolator with its ceiling/floor functions and worst-case
//!   envelopes ([`LipschitzInterpolator`]),
//! * LACKI, a data-driven Lipschitz constant estimate ([`lacki`]),
//! * bounded noise models with a tunable boundary exponent η ([`noise`]),
//! * Monte-Carlo convergence-rate studies ([`experiments`]),
//! * an online-learning MRAC pendulum simulation ([`control`]),
//! * and the `lipinterp` command-line tool ([`cli`]).
//!
//! ```
//! use lipinterp::{HolderMetric, LipschitzInterpolator, SampleSet};
//!
//! let data = SampleSet::from_scalar_pairs(&[(0.0, 0.0), (1.0, 1.0)]);
//! let model = LipschitzInterpolator::new(HolderMetric::euclidean(), 1.0).unwrap();
//! assert_eq!(model.predict(&[2.0], &data).unwrap(), 1.0);
//! ```

pub mod cli;
pub mod control;
pub mod data;
pub mod error;
pub mod experiments;
pub mod interpolator;
pub mod io;
pub mod lacki;
pub mod metric;
pub mod noise;
pub mod plot;
pub mod seed;

pub use data::{MultiOutputSampleSet, SampleSet};
pub use error::{LiError, Result};
pub use interpolator::{sup_error, Bounds, LipschitzInterpolator};
pub use lacki::{lacki_full, LackiState};
pub use metric::{HolderMetric, NormOrder};
pub use noise::NoiseModel;
