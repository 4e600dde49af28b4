//! Shared experiment plumbing: loss construction, per-repetition seeds and
//! the ARC of a learner-output set.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::gap::RiskMode;
use crate::algorithms::{Domain, Learner, LearnerSpec, Loss, LossModel, ZeroOneThreshold};
use crate::error::{Error, Result};
use crate::limits::SolverLimits;
use crate::metric::{Metric, Vector};
use crate::rademacher::{rademacher_exact, rademacher_mc, LossMatrix, RadEstimate};
use crate::supersample::{Distribution, ThetaMode};

/// Loss description as it appears in run configs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum LossSpec {
    /// `½ Σ w_j (θ_j - z_j)²`.
    Quadratic { weights: Vec<f64> },
    /// 0-1 loss of `x > θ` on `z = (x, y)`.
    ZeroOneThreshold,
}

impl Default for LossSpec {
    fn default() -> Self {
        LossSpec::Quadratic { weights: vec![1.0] }
    }
}

/// A loss for risks and ARC, plus the differentiable model when there is
/// one.
#[derive(Clone)]
pub struct BuiltLoss {
    pub loss: Arc<dyn Loss>,
    pub model: Option<Arc<LossModel>>,
}

impl LossSpec {
    /// Quadratic losses live on `theta_domain` with data in `data_box`.
    pub fn build(&self, theta_domain: &Domain, data_box: &[[f64; 2]]) -> Result<BuiltLoss> {
        match self {
            LossSpec::Quadratic { weights } => {
                let m = Arc::new(LossModel::quadratic(
                    weights.clone(),
                    theta_domain.clone(),
                    data_box.to_vec(),
                )?);
                Ok(BuiltLoss {
                    loss: m.clone(),
                    model: Some(m),
                })
            }
            LossSpec::ZeroOneThreshold => Ok(BuiltLoss {
                loss: Arc::new(ZeroOneThreshold),
                model: None,
            }),
        }
    }
}

/// True risk: closed form when available, otherwise held out.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "snake_case", deny_unknown_fields)]
pub enum RiskChoice {
    Auto {
        #[serde(default = "default_heldout_m")]
        heldout_m: usize,
    },
    ClosedForm,
    Heldout {
        #[serde(default = "default_heldout_m")]
        m: usize,
    },
}

fn default_heldout_m() -> usize {
    1_000_000
}

impl Default for RiskChoice {
    fn default() -> Self {
        RiskChoice::Auto {
            heldout_m: default_heldout_m(),
        }
    }
}

impl RiskChoice {
    pub(crate) fn resolve(self, loss: &dyn Loss, theta: &Vector, dist: &Distribution, seed: u64) -> RiskMode {
        match self {
            RiskChoice::ClosedForm => RiskMode::ClosedForm,
            RiskChoice::Heldout { m } => RiskMode::Heldout { m, seed },
            RiskChoice::Auto { heldout_m } => {
                if loss.closed_form_risk(theta, dist).is_some() {
                    RiskMode::ClosedForm
                } else {
                    RiskMode::Heldout { m: heldout_m, seed }
                }
            }
        }
    }
}

/// Everything an experiment needs besides its own options.
pub struct Setup {
    pub learner_spec: LearnerSpec,
    pub learner: Box<dyn Learner>,
    pub loss_spec: LossSpec,
    pub loss: BuiltLoss,
    pub dist: Distribution,
    pub n: usize,
    pub reps: usize,
    pub seed: u64,
    /// Overrides `seed` for the supersample draws when set.
    pub data_seed: Option<u64>,
    pub delta: f64,
    /// Pass/fail margin in standard errors.
    pub margin: f64,
    pub metric: Metric,
    pub dedup_tol: f64,
    pub limits: SolverLimits,
    pub theta_mode: ThetaMode,
    pub risk: RiskChoice,
    /// Draws for Monte Carlo ARC when `n` exceeds the exact limit.
    pub mc_draws: u64,
}

impl std::fmt::Debug for Setup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Setup")
            .field("learner", &self.learner.name())
            .field("loss", &self.loss_spec)
            .field("dist", &self.dist)
            .field("n", &self.n)
            .field("reps", &self.reps)
            .field("seed", &self.seed)
            .finish_non_exhaustive()
    }
}

impl Setup {
    /// Builds the loss and learner. The parameter domain is the learner's
    /// own, or else the distribution's support box.
    pub fn new(learner_spec: LearnerSpec, loss_spec: LossSpec, dist: Distribution, n: usize) -> Result<Self> {
        let dist = dist.resolve()?;
        let domain = learner_spec
            .domain()
            .cloned()
            .unwrap_or_else(|| Domain::Box(dist.support_box()));
        let loss = loss_spec.build(&domain, &dist.support_box())?;
        let learner = learner_spec.build(loss.model.clone())?;
        Ok(Self {
            learner_spec,
            learner,
            loss_spec,
            loss,
            dist,
            n,
            reps: 100,
            seed: 0,
            data_seed: None,
            delta: 0.05,
            margin: 3.0,
            metric: Metric::Linf,
            dedup_tol: 1e-12,
            limits: SolverLimits::default(),
            theta_mode: ThetaMode::Exact,
            risk: RiskChoice::default(),
            mc_draws: 20_000,
        })
    }

    pub fn with_reps(mut self, reps: usize) -> Self {
        self.reps = reps;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    /// `(a, b)`: loss values lie in `[a, a + b]`.
    pub fn range(&self) -> (f64, f64) {
        self.loss.loss.range()
    }

    /// Lipschitz constant with respect to the metric on parameters. The loss
    /// declares it for the Euclidean norm, which is at most `sqrt(d)` times
    /// the sup norm.
    pub fn lipschitz(&self, dim: usize) -> f64 {
        let l = self.loss.loss.lipschitz();
        match self.metric {
            Metric::L2 => l,
            Metric::Linf => l * (dim as f64).sqrt(),
        }
    }

    /// Seeds for the supersample and the learner in repetition `rep`.
    pub fn rep_seeds(&self, rep: usize) -> (u64, u64) {
        let data = splitmix(self.data_seed.unwrap_or(self.seed) ^ 0xda7a_5eed, rep as u64);
        let learner = splitmix(self.seed ^ 0x1ea7_5eed, rep as u64);
        (data, learner)
    }

    /// Loss matrix of `thetas` on `sample`, with the declared range.
    pub fn loss_matrix(&self, thetas: &[Vector], sample: &[Vector]) -> Result<LossMatrix> {
        let (a, b) = self.range();
        let rows = thetas
            .iter()
            .map(|t| sample.iter().map(|z| self.loss.loss.eval(t, z)).collect())
            .collect();
        LossMatrix::new(rows, a, b)
    }

    /// Exact ARC when `n` is within the exact limit, Monte Carlo otherwise.
    pub fn arc(&self, thetas: &[Vector], sample: &[Vector], mc_seed: u64) -> Result<RadEstimate> {
        let m = self.loss_matrix(thetas, sample)?;
        if sample.len() <= self.limits.exact_n_limit {
            rademacher_exact(&m, self.limits.exact_n_limit)
        } else {
            rademacher_mc(&m, self.mc_draws, mc_seed)
        }
    }

    pub(crate) fn check_n(&self, n: usize) -> Result<()> {
        if matches!(self.theta_mode, ThetaMode::Exact) && n > self.limits.exact_n_limit {
            return Err(Error::LimitExceeded {
                what: "exact Θ̂ⁿ enumeration",
                limit_name: "exact_n_limit",
                limit: self.limits.exact_n_limit,
                value: n,
            });
        }
        Ok(())
    }
}

/// Element `k` of the splitmix64 stream started at `base`.
pub(crate) fn splitmix(base: u64, k: u64) -> u64 {
    let mut z = base.wrapping_add(k.wrapping_add(1).wrapping_mul(0x9e37_79b9_7f4a_7c15));
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Mean and standard error of the mean.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MeanSe {
    pub mean: f64,
    pub stderr: f64,
    pub count: usize,
}

impl MeanSe {
    pub fn of(xs: &[f64]) -> Self {
        let k = xs.len();
        if k == 0 {
            return Self {
                mean: f64::NAN,
                stderr: f64::NAN,
                count: 0,
            };
        }
        let mean = xs.iter().sum::<f64>() / k as f64;
        let stderr = if k < 2 {
            0.0
        } else {
            (xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (k - 1) as f64 / k as f64).sqrt()
        };
        Self { mean, stderr, count: k }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeds_differ_across_reps() {
        let s = Setup::new(
            LearnerSpec::CompressK { k: 1 },
            LossSpec::default(),
            Distribution::uniform_unit(1),
            4,
        )
        .unwrap();
        let a: Vec<_> = (0..100).map(|r| s.rep_seeds(r)).collect();
        let mut flat: Vec<u64> = a.iter().flat_map(|&(x, y)| [x, y]).collect();
        flat.sort();
        flat.dedup();
        assert_eq!(flat.len(), 200);
    }

    #[test]
    fn mean_se() {
        let m = MeanSe::of(&[1.0, 2.0, 3.0]);
        assert_eq!(m.mean, 2.0);
        assert!((m.stderr - (1.0f64 / 3.0).sqrt()).abs() < 1e-15);
        assert_eq!(MeanSe::of(&[4.0]).stderr, 0.0);
    }

    #[test]
    fn loss_spec_json() {
        let l: LossSpec = serde_json::from_str(r#"{"kind":"quadratic","weights":[1,2]}"#).unwrap();
        assert_eq!(l, LossSpec::Quadratic { weights: vec![1.0, 2.0] });
        let z: LossSpec = serde_json::from_str(r#"{"kind":"zero_one_threshold"}"#).unwrap();
        assert_eq!(z, LossSpec::ZeroOneThreshold);
    }
}
