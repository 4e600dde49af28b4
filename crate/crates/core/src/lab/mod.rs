//! Generalization gaps, closed-form bounds and the experiments comparing
//! them with the ARC.

mod experiments;
mod gap;
mod report;
mod rhs;
mod setup;

pub use experiments::{
    compress_check, expectation_bound_experiment, fractal_bound_experiment, limit_ratio_experiment, sgd_check,
    vc_check, FractalInstance, SgdCheckOptions, TOL,
};
pub use gap::{generalization_gap, GapMeasurement, RiskMode};
pub use report::{BoundReport, Check, Flags, NamedBound, RatioPoint, ReportRow};
pub use rhs::{binomial, compression_rhs, concentration_term, highprob_rhs, sgd_rhs, vc_rhs};
pub use setup::{BuiltLoss, LossSpec, MeanSe, RiskChoice, Setup};
