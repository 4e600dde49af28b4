//! Finite Minkowski dimension of a few small sets, against the enumeration
//! oracle and the trivial bound `ln|C| / ln 2`.

use arc_bounds::fractal::{dim_fm, dim_fm_oracle, trivial_dim_bound};
use arc_bounds::{Metric, PointCloud, SolverLimits, Vector};

fn main() -> arc_bounds::Result<()> {
    let limits = SolverLimits::default();
    let sets: [(&str, Vec<f64>); 3] = [
        ("evenly spaced", vec![0.0, 1.0, 2.0, 3.0]),
        ("two clusters", vec![0.0, 0.1, 0.2, 5.0, 5.1, 5.2]),
        ("cantor level 2", vec![0.0, 2.0 / 9.0, 2.0 / 3.0, 8.0 / 9.0]),
    ];
    for (name, xs) in sets {
        let c = PointCloud::from_scalars(&xs, Metric::Linf)?;
        let d = dim_fm(&c, &limits)?;
        let oracle = dim_fm_oracle(&c, 1e-9, &limits)?;
        println!(
            "{name:>15}: dim_fm = {:.6} (oracle {oracle:.6}, trivial {:.6}), T = {:?}, Δ/∇ = {:.3}",
            d.value,
            trivial_dim_bound(&c)?,
            d.t,
            d.delta / d.nabla
        );
    }
    // all pairwise sup-distances equal: ∇ = Δ, so the set is focal
    let corner = [vec![0.0, 0.0], vec![1.0, 0.0], vec![0.0, 1.0]];
    let corner = PointCloud::new(corner.into_iter().map(Vector::new).collect::<arc_bounds::Result<_>>()?, Metric::Linf, 0.0)?;
    let d = dim_fm(&corner, &limits)?;
    println!("{:>15}: focal = {}, dim_fm = {}", "right corner", d.focal, d.value);
    Ok(())
}
