//! Algorithm-dependent Rademacher complexity (ARC) of learner outputs, with
//! the covering-number, fractal-dimension and closed-form bounds used to
//! control it.
//!
//! The pipeline is: draw a supersample, build the set of learner outputs over
//! all sign mixings ([`supersample::build_theta_hat`]), then compare its
//! empirical Rademacher complexity ([`rademacher`]) with the bounds from
//! [`fractal`] and [`lab`].

pub mod algorithms;
pub mod cli;
pub mod error;
pub mod fractal;
pub mod lab;
pub mod limits;
pub mod metric;
pub mod rademacher;
pub mod supersample;

pub use error::{Error, Result};
pub use limits::SolverLimits;
pub use metric::{Metric, PointCloud, Vector};
