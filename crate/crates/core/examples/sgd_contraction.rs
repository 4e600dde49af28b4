//! Contraction factor and forgetting depth of projected SGD, and the size of
//! its output set over all sign-mixings of a small supersample.

use std::sync::Arc;

use arc_bounds::algorithms::{contraction_factor, forgetting_depth, Domain, LossModel, Sgd};
use arc_bounds::supersample::{build_theta_hat, draw_supersample, Distribution, ThetaMode};
use arc_bounds::{Metric, Vector};

fn main() -> arc_bounds::Result<()> {
    for (alpha, beta, eta) in [(1.0, 1.0, 0.5), (1.0, 2.0, 0.5), (2.0, 4.0, 0.25), (1.0, 1.0, 0.1)] {
        let g = contraction_factor(alpha, beta, eta)?;
        println!("α={alpha} β={beta} η={eta}: γ = {g:.4}, depth for ε=0.01: {}", forgetting_depth(1.0, g, 0.01)?);
    }
    let loss = Arc::new(LossModel::quadratic(vec![1.0], Domain::Box(vec![[0.0, 1.0]]), vec![[0.0, 1.0]])?);
    let ss = draw_supersample(&Distribution::uniform_unit(1), 10, 3)?;
    for t in [1, 2, 4, 8, 16] {
        let sgd = Sgd::new(loss.clone(), Vector::scalar(0.5), 0.5, t, None)?.with_index_seed(9);
        let hat = build_theta_hat(&sgd, &ss, ThetaMode::Exact, 0, Metric::Linf, 1e-12, 20)?;
        println!("T = {t:>2}: |Θ̂| = {}", hat.cloud.len());
    }
    Ok(())
}
