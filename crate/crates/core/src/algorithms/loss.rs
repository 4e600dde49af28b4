use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::metric::Vector;
use crate::supersample::Distribution;

/// A compact convex parameter set with an exact Euclidean projection.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", deny_unknown_fields)]
pub enum Domain {
    /// Axis-aligned box, one `[lo, hi]` per coordinate.
    Box(Vec<[f64; 2]>),
    Ball { center: Vec<f64>, radius: f64 },
}

impl Domain {
    pub fn validate(&self) -> Result<()> {
        match self {
            Domain::Box(b) => {
                if b.is_empty() {
                    return invalid("box needs at least one coordinate");
                }
                if b.iter().any(|[lo, hi]| !(lo <= hi) || !lo.is_finite() || !hi.is_finite()) {
                    return invalid("box bounds must be finite with lo <= hi");
                }
            }
            Domain::Ball { center, radius } => {
                if center.is_empty() || !(*radius > 0.0) || center.iter().any(|c| !c.is_finite()) {
                    return invalid("ball needs a finite center and positive radius");
                }
            }
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        match self {
            Domain::Box(b) => b.len(),
            Domain::Ball { center, .. } => center.len(),
        }
    }

    /// Euclidean projection: coordinate clamp for boxes, radial shrink for
    /// balls.
    pub fn project(&self, theta: &[f64]) -> Vec<f64> {
        match self {
            Domain::Box(b) => theta
                .iter()
                .zip(b)
                .map(|(&x, [lo, hi])| x.clamp(*lo, *hi))
                .collect(),
            Domain::Ball { center, radius } => {
                let r = theta
                    .iter()
                    .zip(center)
                    .map(|(x, c)| (x - c) * (x - c))
                    .sum::<f64>()
                    .sqrt();
                if r <= *radius {
                    theta.to_vec()
                } else {
                    theta
                        .iter()
                        .zip(center)
                        .map(|(x, c)| c + (x - c) * radius / r)
                        .collect()
                }
            }
        }
    }

    pub fn contains(&self, theta: &[f64]) -> bool {
        theta.len() == self.dim()
            && match self {
                Domain::Box(b) => theta.iter().zip(b).all(|(x, [lo, hi])| lo <= x && x <= hi),
                Domain::Ball { center, radius } => {
                    theta
                        .iter()
                        .zip(center)
                        .map(|(x, c)| (x - c) * (x - c))
                        .sum::<f64>()
                        .sqrt()
                        <= radius * (1.0 + 1e-12)
                }
            }
    }

    /// Euclidean diameter.
    pub fn diameter(&self) -> f64 {
        match self {
            Domain::Box(b) => b.iter().map(|[lo, hi]| (hi - lo) * (hi - lo)).sum::<f64>().sqrt(),
            Domain::Ball { radius, .. } => 2.0 * radius,
        }
    }

    /// Smallest enclosing box.
    pub fn bounding_box(&self) -> Vec<[f64; 2]> {
        match self {
            Domain::Box(b) => b.clone(),
            Domain::Ball { center, radius } => center.iter().map(|c| [c - radius, c + radius]).collect(),
        }
    }

    pub fn sample(&self, rng: &mut impl Rng) -> Vec<f64> {
        let bb = self.bounding_box();
        loop {
            let p: Vec<f64> = bb.iter().map(|[lo, hi]| uniform(rng, *lo, *hi)).collect();
            if self.contains(&p) {
                return p;
            }
        }
    }
}

pub(crate) fn uniform(rng: &mut impl Rng, lo: f64, hi: f64) -> f64 {
    lo + (hi - lo) * rng.random::<f64>()
}

/// A bounded loss `ℓ(θ, z)`.
///
/// `eval` is the loss used for risks and Rademacher complexities. Its values
/// lie in `range().0 ..= range().0 + range().1`, and it is `lipschitz()`-
/// Lipschitz in `θ` for the Euclidean norm.
pub trait Loss: Send + Sync {
    fn eval(&self, theta: &Vector, z: &Vector) -> f64;

    /// `(a, b)`: values lie in `[a, a + b]`.
    fn range(&self) -> (f64, f64);

    fn lipschitz(&self) -> f64;

    /// True risk `E_z ℓ(θ, z)` when the distribution admits a closed form.
    fn closed_form_risk(&self, _theta: &Vector, _dist: &Distribution) -> Option<f64> {
        None
    }
}

type EvalFn = Arc<dyn Fn(&[f64], &[f64]) -> f64 + Send + Sync>;
type GradFn = Arc<dyn Fn(&[f64], &[f64]) -> Vec<f64> + Send + Sync>;
type OffsetFn = Arc<dyn Fn(&[f64]) -> f64 + Send + Sync>;

/// Declared constants of a differentiable loss.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LossConstants {
    /// Weak-Lipschitz constant (Euclidean norm).
    pub lipschitz: f64,
    pub a: f64,
    pub b: f64,
    pub alpha: f64,
    pub beta: f64,
}

/// Differentiable loss with declared constants, checked at construction by
/// 1000 random spot checks of range, strong convexity, smoothness and weak
/// Lipschitz continuity.
///
/// When an offset `h` is supplied, [`Loss::eval`] returns `ℓ - h`, which is
/// the loss whose range and Lipschitz constant are declared. Training uses
/// the gradient of the raw `ℓ`.
#[derive(Clone)]
pub struct LossModel {
    raw: EvalFn,
    grad: GradFn,
    h: Option<OffsetFn>,
    consts: LossConstants,
    theta_domain: Domain,
    data_box: Vec<[f64; 2]>,
    quadratic_weights: Option<Vec<f64>>,
}

impl fmt::Debug for LossModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LossModel")
            .field("consts", &self.consts)
            .field("theta_domain", &self.theta_domain)
            .field("data_box", &self.data_box)
            .field("quadratic_weights", &self.quadratic_weights)
            .field("offset", &self.h.is_some())
            .finish()
    }
}

const SPOT_CHECKS: usize = 1000;
const SPOT_SEED: u64 = 0x5eed_10_55;
const SPOT_SLACK: f64 = 1e-9;

impl LossModel {
    pub fn new(
        raw: impl Fn(&[f64], &[f64]) -> f64 + Send + Sync + 'static,
        grad: impl Fn(&[f64], &[f64]) -> Vec<f64> + Send + Sync + 'static,
        h: Option<Box<dyn Fn(&[f64]) -> f64 + Send + Sync>>,
        consts: LossConstants,
        theta_domain: Domain,
        data_box: Vec<[f64; 2]>,
    ) -> Result<Self> {
        let model = Self {
            raw: Arc::new(raw),
            grad: Arc::new(grad),
            h: h.map(Arc::from),
            consts,
            theta_domain,
            data_box,
            quadratic_weights: None,
        };
        model.spot_check()?;
        Ok(model)
    }

    /// `ℓ(θ, z) = ½ Σ_j w_j (θ_j - z_j)²` with `α = min w`, `β = max w`,
    /// range `[0, ½ Σ w_j g_j²]` and `L = sqrt(Σ (w_j g_j)²)`, where `g_j` is
    /// the largest coordinate gap between the parameter domain and the data
    /// box.
    pub fn quadratic(weights: Vec<f64>, theta_domain: Domain, data_box: Vec<[f64; 2]>) -> Result<Self> {
        theta_domain.validate()?;
        if weights.is_empty() || weights.iter().any(|w| !(*w > 0.0)) {
            return invalid("quadratic weights must be positive");
        }
        let k = weights.len();
        if theta_domain.dim() != k || data_box.len() != k {
            return Err(Error::DimensionMismatch {
                expected: k,
                got: if theta_domain.dim() != k { theta_domain.dim() } else { data_box.len() },
            });
        }
        let tb = theta_domain.bounding_box();
        let gaps: Vec<f64> = tb
            .iter()
            .zip(&data_box)
            .map(|([tl, th], [zl, zh])| (th - zl).abs().max((zh - tl).abs()))
            .collect();
        let b = 0.5 * weights.iter().zip(&gaps).map(|(w, g)| w * g * g).sum::<f64>();
        let lipschitz = weights.iter().zip(&gaps).map(|(w, g)| (w * g).powi(2)).sum::<f64>().sqrt();
        let alpha = weights.iter().copied().fold(f64::INFINITY, f64::min);
        let beta = weights.iter().copied().fold(0.0, f64::max);
        let w1 = weights.clone();
        let w2 = weights.clone();
        let mut model = Self::new(
            move |t, z| 0.5 * t.iter().zip(z).zip(&w1).map(|((a, b), w)| w * (a - b) * (a - b)).sum::<f64>(),
            move |t, z| t.iter().zip(z).zip(&w2).map(|((a, b), w)| w * (a - b)).collect(),
            None,
            LossConstants {
                lipschitz,
                a: 0.0,
                b: if b > 0.0 { b } else { f64::MIN_POSITIVE },
                alpha,
                beta,
            },
            theta_domain,
            data_box,
        )?;
        model.quadratic_weights = Some(weights);
        Ok(model)
    }

    pub fn constants(&self) -> &LossConstants {
        &self.consts
    }

    pub fn theta_domain(&self) -> &Domain {
        &self.theta_domain
    }

    pub fn data_box(&self) -> &[[f64; 2]] {
        &self.data_box
    }

    pub fn raw(&self, theta: &[f64], z: &[f64]) -> f64 {
        (self.raw)(theta, z)
    }

    pub fn grad(&self, theta: &[f64], z: &[f64]) -> Vec<f64> {
        (self.grad)(theta, z)
    }

    fn offset(&self, theta: &[f64]) -> f64 {
        self.h.as_ref().map_or(0.0, |h| h(theta))
    }

    fn spot_check(&self) -> Result<()> {
        let c = &self.consts;
        self.theta_domain.validate()?;
        if !(c.alpha > 0.0 && c.alpha <= c.beta) {
            return Err(Error::ConstantCheck(format!(
                "need 0 < alpha <= beta, got alpha = {}, beta = {}",
                c.alpha, c.beta
            )));
        }
        if !(c.b > 0.0 && c.lipschitz >= 0.0) {
            return Err(Error::ConstantCheck("need b > 0 and L >= 0".into()));
        }
        let data_dom = Domain::Box(self.data_box.clone());
        data_dom.validate()?;
        let mut rng = ChaCha8Rng::seed_from_u64(SPOT_SEED);
        for _ in 0..SPOT_CHECKS {
            let t = self.theta_domain.sample(&mut rng);
            let u = self.theta_domain.sample(&mut rng);
            let z = data_dom.sample(&mut rng);
            let lt = self.raw(&t, &z) - self.offset(&t);
            let lu = self.raw(&u, &z) - self.offset(&u);
            if lt < c.a - SPOT_SLACK || lt > c.a + c.b + SPOT_SLACK {
                return Err(Error::ConstantCheck(format!(
                    "loss {lt} outside [{}, {}] at θ = {t:?}, z = {z:?}",
                    c.a,
                    c.a + c.b
                )));
            }
            let gt = self.grad(&t, &z);
            let gu = self.grad(&u, &z);
            let diff: Vec<f64> = t.iter().zip(&u).map(|(a, b)| a - b).collect();
            let gdiff: Vec<f64> = gt.iter().zip(&gu).map(|(a, b)| a - b).collect();
            let d2: f64 = diff.iter().map(|x| x * x).sum();
            let inner: f64 = gdiff.iter().zip(&diff).map(|(a, b)| a * b).sum();
            if inner < c.alpha * d2 - SPOT_SLACK {
                return Err(Error::ConstantCheck(format!("strong convexity fails at θ = {t:?}, θ' = {u:?}")));
            }
            let gnorm = gdiff.iter().map(|x| x * x).sum::<f64>().sqrt();
            if gnorm > c.beta * d2.sqrt() + SPOT_SLACK {
                return Err(Error::ConstantCheck(format!("smoothness fails at θ = {t:?}, θ' = {u:?}")));
            }
            if (lt - lu).abs() > c.lipschitz * d2.sqrt() + SPOT_SLACK {
                return Err(Error::ConstantCheck(format!("Lipschitz bound fails at θ = {t:?}, θ' = {u:?}")));
            }
        }
        Ok(())
    }
}

impl Loss for LossModel {
    fn eval(&self, theta: &Vector, z: &Vector) -> f64 {
        self.raw(theta.coords(), z.coords()) - self.offset(theta.coords())
    }

    fn range(&self) -> (f64, f64) {
        (self.consts.a, self.consts.b)
    }

    fn lipschitz(&self) -> f64 {
        self.consts.lipschitz
    }

    fn closed_form_risk(&self, theta: &Vector, dist: &Distribution) -> Option<f64> {
        let w = self.quadratic_weights.as_ref()?;
        let moments = dist.moments()?;
        let t = theta.coords();
        let r = 0.5
            * w.iter()
                .enumerate()
                .map(|(j, wj)| wj * ((t[j] - moments[j].0).powi(2) + moments[j].1))
                .sum::<f64>();
        Some(r - self.offset(t))
    }
}

/// 0-1 loss of the threshold classifier `x > θ`, on points `z = (x, y)`
/// with `y ∈ {0, 1}`.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct ZeroOneThreshold;

impl Loss for ZeroOneThreshold {
    fn eval(&self, theta: &Vector, z: &Vector) -> f64 {
        let pred = z.coords()[0] > theta.coords()[0];
        let label = z.coords()[1] == 1.0;
        if pred == label {
            0.0
        } else {
            1.0
        }
    }

    fn range(&self) -> (f64, f64) {
        (0.0, 1.0)
    }

    fn lipschitz(&self) -> f64 {
        f64::INFINITY
    }

    fn closed_form_risk(&self, theta: &Vector, dist: &Distribution) -> Option<f64> {
        dist.threshold_risk(theta.coords()[0])
    }
}
