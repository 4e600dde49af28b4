//! How the mean ARC of grid ERM scales with n.

use arc_bounds::algorithms::{Domain, LearnerSpec};
use arc_bounds::lab::{limit_ratio_experiment, LossSpec, Setup};
use arc_bounds::supersample::Distribution;

fn main() -> arc_bounds::Result<()> {
    let spec = LearnerSpec::ErmGrid {
        grid: (0..16).map(|i| vec![i as f64 / 15.0]).collect(),
        domain: Domain::Box(vec![[0.0, 1.0]]),
    };
    let setup = Setup::new(spec, LossSpec::default(), Distribution::uniform_unit(1), 4)?
        .with_reps(5)
        .with_seed(10);
    let grid: Vec<usize> = (4..=14).step_by(2).collect();
    let r = limit_ratio_experiment(&setup, &grid, None)?;
    for p in &r.series {
        println!("n = {:>2}: mean ARC {:.5} ± {:.5}, ratio {:.4}", p.n, p.arc.mean, p.arc.stderr, p.ratio);
    }
    println!("slope estimate {:?}", r.slope_estimate);
    Ok(())
}
