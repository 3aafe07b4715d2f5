//! Monte-Carlo convergence studies for the interpolator and for LACKI.

mod lacki_study;
mod rate;
mod study;
mod targets;

pub use lacki_study::{run_lacki_study, LackiStudyConfig, LackiStudyResult, LackiStudyRow};
pub use rate::{eta_condition, theoretical_rate, EtaComparison, RateSpec};
pub use study::{
    fit_loglog, fit_loglog_slope, run_convergence_study, ConvergenceStudyConfig, StudyResult,
    StudyRow, SummaryRow,
};
pub use targets::{Target, CHIRP_BEST_LIPSCHITZ};
