//! Learners: projected SGD, finite-grid ERM, k-compression and 1-D threshold
//! ERM.

mod compress;
mod erm;
pub mod loss;
mod sgd;
mod vc;

use std::sync::Arc;

use serde::{Deserialize, Serialize};

pub use compress::{compress_k, CompressK};
pub use erm::{erm_finite, ErmGrid};
pub use loss::{Domain, Loss, LossConstants, LossModel, ZeroOneThreshold};
pub use sgd::{contraction_factor, forgetting_depth, sgd_run, Sgd};
pub use vc::{vc_threshold_erm, ThresholdLearner};

use crate::error::{Error, Result};
use crate::metric::Vector;

/// A learner viewed as a function of the sample and a seed for its internal
/// randomness. Deterministic learners ignore the seed.
pub trait Learner: Send + Sync {
    fn fit(&self, sample: &[Vector], seed: u64) -> Result<Vector>;

    fn name(&self) -> String;
}

/// Ignores the data.
#[derive(Debug, Clone, PartialEq)]
pub struct ConstantLearner(Vector);

impl ConstantLearner {
    pub fn new(theta: Vector) -> Self {
        Self(theta)
    }
}

impl Learner for ConstantLearner {
    fn fit(&self, _sample: &[Vector], _seed: u64) -> Result<Vector> {
        Ok(self.0.clone())
    }

    fn name(&self) -> String {
        "constant".into()
    }
}

/// Learner description as it appears in run configs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum LearnerSpec {
    Sgd {
        theta1: Vec<f64>,
        eta: f64,
        #[serde(rename = "T")]
        t: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        index_seed: Option<u64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        indices: Option<Vec<usize>>,
        domain: Domain,
    },
    ErmGrid {
        grid: Vec<Vec<f64>>,
        domain: Domain,
    },
    CompressK {
        k: usize,
    },
    VcThreshold {
        #[serde(default)]
        lo: f64,
        #[serde(default = "one")]
        hi: f64,
    },
    Constant {
        theta: Vec<f64>,
    },
}

fn one() -> f64 {
    1.0
}

impl LearnerSpec {
    /// Projection domain, when the learner has one.
    pub fn domain(&self) -> Option<&Domain> {
        match self {
            Self::Sgd { domain, .. } | Self::ErmGrid { domain, .. } => Some(domain),
            _ => None,
        }
    }

    /// Builds the learner. SGD and grid ERM need a differentiable loss.
    pub fn build(&self, loss: Option<Arc<LossModel>>) -> Result<Box<dyn Learner>> {
        let need_loss = |kind: &str| {
            loss.clone().ok_or_else(|| Error::Config {
                field: "loss".into(),
                message: format!("learner {kind} needs a differentiable loss"),
            })
        };
        Ok(match self {
            Self::Sgd {
                theta1,
                eta,
                t,
                index_seed,
                indices,
                domain,
            } => {
                let l = need_loss("sgd")?;
                if l.theta_domain() != domain {
                    return Err(Error::Config {
                        field: "learner.domain".into(),
                        message: "does not match the loss domain".into(),
                    });
                }
                let mut sgd = Sgd::new(l, Vector::new(theta1.clone())?, *eta, *t, indices.clone())?;
                if let Some(s) = index_seed {
                    sgd = sgd.with_index_seed(*s);
                }
                Box::new(sgd)
            }
            Self::ErmGrid { grid, domain } => {
                let l = need_loss("erm_grid")?;
                let mut pts = Vec::with_capacity(grid.len());
                for g in grid {
                    if !domain.contains(g) {
                        return Err(Error::Config {
                            field: "learner.grid".into(),
                            message: format!("grid point {g:?} lies outside the domain"),
                        });
                    }
                    pts.push(Vector::new(g.clone())?);
                }
                Box::new(ErmGrid::new(pts, l)?)
            }
            Self::CompressK { k } => Box::new(CompressK { k: *k }),
            Self::VcThreshold { lo, hi } => Box::new(ThresholdLearner { lo: *lo, hi: *hi }),
            Self::Constant { theta } => Box::new(ConstantLearner::new(Vector::new(theta.clone())?)),
        })
    }
}
