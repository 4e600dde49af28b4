//! Projected SGD with a fixed index sequence.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::loss::LossModel;
use super::Learner;
use crate::error::{invalid, Error, Result};
use crate::metric::Vector;

/// `γ = sqrt(1 - 2αη + αβη²)`, the Lipschitz constant of one projected step.
pub fn contraction_factor(alpha: f64, beta: f64, eta: f64) -> Result<f64> {
    if !(alpha > 0.0 && alpha <= beta) {
        return invalid(format!("need 0 < alpha <= beta, got alpha = {alpha}, beta = {beta}"));
    }
    if !(eta > 0.0 && eta < 2.0 / beta) {
        return invalid(format!("step size {eta} outside (0, {})", 2.0 / beta));
    }
    Ok((1.0 - 2.0 * alpha * eta + alpha * beta * eta * eta).max(0.0).sqrt())
}

/// Smallest `m >= 0` with `γ^m R <= eps`.
pub fn forgetting_depth(r: f64, gamma: f64, eps: f64) -> Result<usize> {
    if !(0.0..1.0).contains(&gamma) {
        return invalid(format!("contraction factor must lie in [0, 1), got {gamma}"));
    }
    if !(r > 0.0 && eps > 0.0) {
        return invalid("R and eps must be positive");
    }
    if r <= eps {
        return Ok(0);
    }
    if gamma == 0.0 {
        return Ok(1);
    }
    let mut m = ((r / eps).ln() / (1.0 / gamma).ln()).ceil().max(0.0) as usize;
    // guard the ceiling against rounding in the log ratio
    while m > 0 && gamma.powi(m as i32 - 1) * r <= eps {
        m -= 1;
    }
    while gamma.powi(m as i32) * r > eps {
        m += 1;
    }
    Ok(m)
}

/// Projected SGD: `θ_{t+1} = Π(θ_t - η ∇ℓ(θ_t, z_{i_t}))`, returning
/// `θ_{T+1}`.
///
/// The index sequence is fixed up front, drawn from a dedicated index seed,
/// or drawn from the learner seed passed to [`Learner::fit`]. In every case
/// it is the same for all samples the learner sees with that seed.
#[derive(Debug, Clone)]
pub struct Sgd {
    loss: Arc<LossModel>,
    theta1: Vector,
    eta: f64,
    steps: usize,
    indices: Option<Vec<usize>>,
    index_seed: Option<u64>,
}

impl Sgd {
    pub fn new(loss: Arc<LossModel>, theta1: Vector, eta: f64, steps: usize, indices: Option<Vec<usize>>) -> Result<Self> {
        let c = loss.constants();
        contraction_factor(c.alpha, c.beta, eta)?;
        if steps == 0 {
            return invalid("SGD needs at least one step");
        }
        if !loss.theta_domain().contains(theta1.coords()) {
            return invalid(format!("initial point {theta1:?} lies outside the domain"));
        }
        if let Some(ix) = &indices {
            if ix.len() != steps {
                return Err(Error::DimensionMismatch {
                    expected: steps,
                    got: ix.len(),
                });
            }
        }
        Ok(Self {
            loss,
            theta1,
            eta,
            steps,
            indices,
            index_seed: None,
        })
    }

    /// Draws the index sequence from `seed` instead of the learner seed.
    pub fn with_index_seed(mut self, seed: u64) -> Self {
        self.index_seed = Some(seed);
        self
    }

    pub fn gamma(&self) -> f64 {
        let c = self.loss.constants();
        contraction_factor(c.alpha, c.beta, self.eta).expect("checked in new")
    }

    pub fn steps(&self) -> usize {
        self.steps
    }

    pub fn loss(&self) -> &LossModel {
        &self.loss
    }

    /// `Φ_z(θ) = Π(θ - η ∇ℓ(θ, z))`.
    pub fn step(&self, theta: &[f64], z: &[f64]) -> Vec<f64> {
        let g = self.loss.grad(theta, z);
        let moved: Vec<f64> = theta.iter().zip(&g).map(|(t, gi)| t - self.eta * gi).collect();
        self.loss.theta_domain().project(&moved)
    }

    /// The index sequence used for a sample of size `n`.
    pub fn index_sequence(&self, n: usize, seed: u64) -> Vec<usize> {
        match &self.indices {
            Some(ix) => ix.clone(),
            None => {
                let mut rng = ChaCha8Rng::seed_from_u64(self.index_seed.unwrap_or(seed));
                (0..self.steps).map(|_| rng.random_range(0..n)).collect()
            }
        }
    }

    /// Runs from `theta` through the given indices.
    pub fn run_from(&self, theta: &[f64], sample: &[Vector], indices: &[usize]) -> Vec<f64> {
        indices
            .iter()
            .fold(theta.to_vec(), |t, &i| self.step(&t, sample[i].coords()))
    }
}

impl Learner for Sgd {
    fn fit(&self, sample: &[Vector], seed: u64) -> Result<Vector> {
        if sample.is_empty() {
            return invalid("empty sample");
        }
        let ix = self.index_sequence(sample.len(), seed);
        if let Some(&bad) = ix.iter().find(|&&i| i >= sample.len()) {
            return invalid(format!("index {bad} out of range for a sample of {}", sample.len()));
        }
        Vector::new(self.run_from(self.theta1.coords(), sample, &ix))
    }

    fn name(&self) -> String {
        format!("sgd(eta={},T={})", self.eta, self.steps)
    }
}

/// Runs projected SGD once.
pub fn sgd_run(
    loss: Arc<LossModel>,
    theta1: Vector,
    eta: f64,
    steps: usize,
    indices: Vec<usize>,
    sample: &[Vector],
) -> Result<Vector> {
    Sgd::new(loss, theta1, eta, steps, Some(indices))?.fit(sample, 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algorithms::loss::Domain;

    fn quad(weights: Vec<f64>) -> Arc<LossModel> {
        let k = weights.len();
        Arc::new(LossModel::quadratic(weights, Domain::Box(vec![[0.0, 1.0]; k]), vec![[0.0, 1.0]; k]).unwrap())
    }

    #[test]
    fn gamma_values() {
        assert_eq!(contraction_factor(1.0, 1.0, 1.0).unwrap(), 0.0);
        assert!((contraction_factor(1.0, 2.0, 0.5).unwrap() - 0.5f64.sqrt()).abs() < 1e-15);
        assert!(contraction_factor(1.0, 2.0, 1e-9).unwrap() > 0.999_999);
        assert!(contraction_factor(1.0, 2.0, 1.0).is_err());
        assert!(contraction_factor(2.0, 1.0, 0.5).is_err());
    }

    #[test]
    fn depth_values() {
        assert_eq!(forgetting_depth(1.0, 0.5, 2.0).unwrap(), 0);
        assert_eq!(forgetting_depth(1.0, 0.5, 1.0 / 16.0).unwrap(), 4);
        assert_eq!(forgetting_depth(1.0, 0.70711, 0.01).unwrap(), 14);
        assert_eq!(forgetting_depth(1.0, 0.0, 0.1).unwrap(), 1);
        assert!(forgetting_depth(1.0, 1.0, 0.1).is_err());
    }

    #[test]
    fn unit_step_lands_on_data() {
        let sgd = Sgd::new(quad(vec![1.0]), Vector::scalar(0.9), 1.0, 1, Some(vec![0])).unwrap();
        let out = sgd.fit(&[Vector::scalar(0.2)], 0).unwrap();
        assert!((out.coords()[0] - 0.2).abs() < 1e-15);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(Sgd::new(quad(vec![1.0]), Vector::scalar(0.5), 0.5, 0, None).is_err());
        assert!(Sgd::new(quad(vec![1.0]), Vector::scalar(0.5), 2.5, 3, None).is_err());
        assert!(Sgd::new(quad(vec![1.0]), Vector::scalar(1.5), 0.5, 3, None).is_err());
    }

    #[test]
    fn deterministic_given_indices() {
        let sgd = Sgd::new(quad(vec![1.0, 2.0]), Vector::new(vec![0.5, 0.5]).unwrap(), 0.5, 5, None).unwrap();
        let sample: Vec<Vector> = (0..4).map(|i| Vector::new(vec![i as f64 / 4.0, 0.3]).unwrap()).collect();
        assert_eq!(sgd.fit(&sample, 3).unwrap(), sgd.fit(&sample, 3).unwrap());
    }

    #[test]
    fn single_step_contracts() {
        let sgd = Sgd::new(quad(vec![1.0, 2.0]), Vector::new(vec![0.5, 0.5]).unwrap(), 0.5, 1, None).unwrap();
        let gamma = sgd.gamma();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..1000 {
            let t: Vec<f64> = (0..2).map(|_| rng.random()).collect();
            let u: Vec<f64> = (0..2).map(|_| rng.random()).collect();
            let z: Vec<f64> = (0..2).map(|_| rng.random()).collect();
            let a = sgd.step(&t, &z);
            let b = sgd.step(&u, &z);
            let d_after = ((a[0] - b[0]).powi(2) + (a[1] - b[1]).powi(2)).sqrt();
            let d_before = ((t[0] - u[0]).powi(2) + (t[1] - u[1]).powi(2)).sqrt();
            assert!(d_after <= gamma * d_before + 1e-9);
        }
    }
}
