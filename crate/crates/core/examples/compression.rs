//! Farthest-point k-compression: output set size against C(2n, k) and the
//! compression bound.

use arc_bounds::algorithms::CompressK;
use arc_bounds::lab::{binomial, compression_rhs};
use arc_bounds::supersample::{build_theta_hat, draw_supersample, Distribution, ThetaMode};
use arc_bounds::Metric;

fn main() -> arc_bounds::Result<()> {
    let dist = Distribution::uniform_unit(1);
    for (k, n) in [(1, 6), (2, 8), (3, 10)] {
        let ss = draw_supersample(&dist, n, 4)?;
        let hat = build_theta_hat(&CompressK { k }, &ss, ThetaMode::Exact, 0, Metric::Linf, 1e-12, 20)?;
        println!(
            "k={k} n={n:>2}: |Θ̂| = {:>3} <= C(2n,k) = {:>4}, bound {:.4}",
            hat.cloud.len(),
            binomial(2 * n, k),
            compression_rhs(k, n)?
        );
    }
    Ok(())
}
