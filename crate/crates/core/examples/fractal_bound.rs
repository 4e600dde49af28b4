//! ARC of grid-ERM output sets against the trivial and fractal bounds.

use arc_bounds::algorithms::{Domain, LearnerSpec};
use arc_bounds::lab::{fractal_bound_experiment, LossSpec, Setup};
use arc_bounds::supersample::Distribution;

fn main() -> arc_bounds::Result<()> {
    let spec = LearnerSpec::ErmGrid {
        grid: (0..16).map(|i| vec![i as f64 / 15.0]).collect(),
        domain: Domain::Box(vec![[0.0, 1.0]]),
    };
    let setup = Setup::new(spec, LossSpec::default(), Distribution::uniform_unit(1), 8)?
        .with_reps(10)
        .with_seed(1);
    let (r, inst) = fractal_bound_experiment(&setup)?;
    println!("rep  |Θ̂|      ARC   trivial       D_n");
    for i in &inst {
        let dn = i.dn.map_or("focal".to_string(), |d| format!("{d:.5}"));
        println!("{:>3} {:>5} {:>8.5} {:>9.5} {:>9}", i.rep, i.size, i.arc, i.trivial, dn);
    }
    println!("all checks pass: {}", r.passed());
    Ok(())
}
