//! Mean generalization gap of grid ERM against twice the mean ARC, plus the
//! high-probability bound.

use arc_bounds::algorithms::{Domain, LearnerSpec};
use arc_bounds::lab::{expectation_bound_experiment, LossSpec, Setup};
use arc_bounds::supersample::Distribution;

fn main() -> arc_bounds::Result<()> {
    let spec = LearnerSpec::ErmGrid {
        grid: (0..16).map(|i| vec![i as f64 / 15.0]).collect(),
        domain: Domain::Box(vec![[0.0, 1.0]]),
    };
    let setup = Setup::new(spec, LossSpec::default(), Distribution::uniform_unit(1), 8)?
        .with_reps(300)
        .with_seed(1);
    let r = expectation_bound_experiment(&setup)?;
    for c in &r.checks {
        println!("{} {}: {}", if c.pass { "PASS" } else { "FAIL" }, c.name, c.detail);
    }
    for b in &r.bounds {
        println!("{:>16} = {:.6}  ({})", b.name, b.value, b.statement);
    }
    Ok(())
}
