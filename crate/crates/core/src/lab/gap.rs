use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::algorithms::Loss;
use crate::error::{invalid, Result};
use crate::metric::Vector;
use crate::supersample::Distribution;

/// How the true risk is obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "snake_case", deny_unknown_fields)]
pub enum RiskMode {
    ClosedForm,
    /// Mean over `m` fresh draws seeded with `seed`.
    Heldout { m: usize, seed: u64 },
}

/// `gap = true_risk - empirical_risk`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GapMeasurement {
    pub theta_hat: Vector,
    pub empirical_risk: f64,
    pub true_risk: f64,
    pub gap: f64,
    pub risk_mode: RiskMode,
    /// Standard error of `true_risk` in held-out mode.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub true_risk_stderr: Option<f64>,
}

pub fn generalization_gap(
    loss: &dyn Loss,
    theta: &Vector,
    sample: &[Vector],
    dist: &Distribution,
    mode: RiskMode,
) -> Result<GapMeasurement> {
    if sample.is_empty() {
        return invalid("empty sample");
    }
    let empirical_risk = sample.iter().map(|z| loss.eval(theta, z)).sum::<f64>() / sample.len() as f64;
    let (true_risk, true_risk_stderr) = match mode {
        RiskMode::ClosedForm => match loss.closed_form_risk(theta, dist) {
            Some(r) => (r, None),
            None => return invalid("no closed-form risk for this loss and distribution"),
        },
        RiskMode::Heldout { m, seed } => {
            if m < 2 {
                return invalid("held-out risk needs m >= 2");
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let (mut mean, mut m2) = (0.0, 0.0);
            for i in 0..m {
                let v = loss.eval(theta, &dist.sample(&mut rng));
                let d = v - mean;
                mean += d / (i + 1) as f64;
                m2 += d * (v - mean);
            }
            let var = m2 / (m - 1) as f64;
            (mean, Some((var / m as f64).sqrt()))
        }
    };
    Ok(GapMeasurement {
        theta_hat: theta.clone(),
        empirical_risk,
        true_risk,
        gap: true_risk - empirical_risk,
        risk_mode: mode,
        true_risk_stderr,
    })
}
