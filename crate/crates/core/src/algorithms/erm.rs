use std::sync::Arc;

use super::loss::Loss;
use super::Learner;
use crate::error::{invalid, Result};
use crate::metric::Vector;

/// Empirical risk minimiser over a finite grid; ties go to the lowest grid
/// index.
#[derive(Clone)]
pub struct ErmGrid {
    grid: Vec<Vector>,
    loss: Arc<dyn Loss>,
}

impl std::fmt::Debug for ErmGrid {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ErmGrid").field("grid", &self.grid).finish_non_exhaustive()
    }
}

impl ErmGrid {
    pub fn new(grid: Vec<Vector>, loss: Arc<dyn Loss>) -> Result<Self> {
        if grid.is_empty() {
            return invalid("ERM grid is empty");
        }
        Ok(Self { grid, loss })
    }

    /// `k` equally spaced points on `[lo, hi]`.
    pub fn uniform_1d(lo: f64, hi: f64, k: usize, loss: Arc<dyn Loss>) -> Result<Self> {
        if k == 0 || !(lo <= hi) {
            return invalid("grid needs k >= 1 and lo <= hi");
        }
        let grid = (0..k)
            .map(|i| {
                let x = if k == 1 { lo } else { lo + (hi - lo) * i as f64 / (k - 1) as f64 };
                Vector::scalar(x)
            })
            .collect();
        Self::new(grid, loss)
    }

    pub fn grid(&self) -> &[Vector] {
        &self.grid
    }
}

/// Grid point with the smallest empirical risk.
pub fn erm_finite(grid: &[Vector], loss: &dyn Loss, sample: &[Vector]) -> Result<Vector> {
    if grid.is_empty() {
        return invalid("ERM grid is empty");
    }
    let mut best = 0;
    let mut best_risk = f64::INFINITY;
    for (i, g) in grid.iter().enumerate() {
        let r: f64 = sample.iter().map(|z| loss.eval(g, z)).sum();
        if r < best_risk {
            best = i;
            best_risk = r;
        }
    }
    Ok(grid[best].clone())
}

impl Learner for ErmGrid {
    fn fit(&self, sample: &[Vector], _seed: u64) -> Result<Vector> {
        erm_finite(&self.grid, self.loss.as_ref(), sample)
    }

    fn name(&self) -> String {
        format!("erm_grid({})", self.grid.len())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algorithms::loss::{Domain, LossModel};
    use rand::{Rng, SeedableRng};

    fn quad() -> Arc<dyn Loss> {
        Arc::new(LossModel::quadratic(vec![1.0], Domain::Box(vec![[0.0, 1.0]]), vec![[0.0, 1.0]]).unwrap())
    }

    #[test]
    fn trivial_grids() {
        let l = quad();
        let g = vec![Vector::scalar(0.3)];
        assert_eq!(erm_finite(&g, l.as_ref(), &[Vector::scalar(0.9)]).unwrap(), g[0]);
        let g = vec![Vector::scalar(0.0), Vector::scalar(1.0)];
        let s = vec![Vector::scalar(0.0); 3];
        assert_eq!(erm_finite(&g, l.as_ref(), &s).unwrap(), Vector::scalar(0.0));
        assert!(erm_finite(&[], l.as_ref(), &s).is_err());
    }

    #[test]
    fn ties_go_to_lowest_index() {
        let l = quad();
        let g = vec![Vector::scalar(0.25), Vector::scalar(0.75)];
        let s = vec![Vector::scalar(0.5)];
        assert_eq!(erm_finite(&g, l.as_ref(), &s).unwrap(), Vector::scalar(0.25));
    }

    #[test]
    fn matches_brute_force() {
        let l = quad();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(8);
        for _ in 0..200 {
            let grid: Vec<Vector> = (0..rng.random_range(1..10)).map(|_| Vector::scalar(rng.random())).collect();
            let sample: Vec<Vector> = (0..rng.random_range(1..8)).map(|_| Vector::scalar(rng.random())).collect();
            let risks: Vec<f64> = grid.iter().map(|g| sample.iter().map(|z| l.eval(g, z)).sum()).collect();
            let min = risks.iter().copied().fold(f64::INFINITY, f64::min);
            let first = risks.iter().position(|&r| r == min).unwrap();
            assert_eq!(erm_finite(&grid, l.as_ref(), &sample).unwrap(), grid[first]);
        }
    }
}
