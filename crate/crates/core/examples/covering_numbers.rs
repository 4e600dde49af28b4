//! Internal covering numbers of a 2-D cloud and the covering bound on the
//! Rademacher complexity of the corresponding loss class.

use arc_bounds::fractal::covering_number;
use arc_bounds::metric::diameter;
use arc_bounds::rademacher::covering_rad_bound;
use arc_bounds::{Metric, PointCloud, SolverLimits, Vector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn main() -> arc_bounds::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let pts: arc_bounds::Result<Vec<Vector>> =
        (0..24).map(|_| Vector::new(vec![rng.random(), rng.random()])).collect();
    let c = PointCloud::new(pts?, Metric::L2, 0.0)?;
    let limits = SolverLimits::default();
    let delta = diameter(&c);
    for f in [0.05, 0.1, 0.2, 0.4, 0.8] {
        let r = covering_number(&c, f * delta, &limits)?;
        println!("eps = {:.3}: N = {:>2} (exact: {})", f * delta, r.count, r.exact);
    }
    let grid: Vec<f64> = (1..=10).map(|k| delta * k as f64 / 10.0).collect();
    let b = covering_rad_bound(&c, 1.0, 1.0, 24, &grid, &limits)?;
    println!("best eps {:.3}, bound {:.4}", b.best_eps, b.bound);
    Ok(())
}
