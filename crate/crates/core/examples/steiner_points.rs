//! Adds Steiner points to a set with isolated points and checks that the
//! covering diameter drops to ε while the diameter and N(C, ε) stay put.

use arc_bounds::fractal::{check_steiner, fractal_bound, steiner_augment};
use arc_bounds::{Metric, PointCloud, SolverLimits};

fn main() -> arc_bounds::Result<()> {
    let c = PointCloud::from_scalars(&[0.0, 0.1, 0.2, 0.3, 0.9, 1.6, 2.0], Metric::Linf)?;
    let limits = SolverLimits::default();
    let eps = 0.1;
    let p = steiner_augment(&c, eps)?;
    let chk = check_steiner(&c, &p, eps, &limits)?;
    println!("added {:?}", p.iter().map(|v| v.coords()[0]).collect::<Vec<_>>());
    println!("{chk:#?}");
    let aug = c.union(&p)?;
    let (before, after) = (fractal_bound(&c, 1.0, 1.0, 50, &limits)?, fractal_bound(&aug, 1.0, 1.0, 50, &limits)?);
    println!("D_n before {:.4}, after {:.4}", before.value, after.value);
    Ok(())
}
