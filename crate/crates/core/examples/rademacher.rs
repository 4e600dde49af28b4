//! Exact and Monte Carlo empirical Rademacher complexity of a random loss
//! matrix, with the Massart bound for comparison.

use arc_bounds::rademacher::{massart_bound, rademacher_exact, rademacher_mc, LossMatrix};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn main() -> arc_bounds::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let (rows, n) = (40, 14);
    let m: Vec<Vec<f64>> = (0..rows).map(|_| (0..n).map(|_| rng.random()).collect()).collect();
    let m = LossMatrix::new(m, 0.0, 1.0)?;
    let exact = rademacher_exact(&m, 20)?;
    println!("exact        {:.6} over {} sign vectors", exact.value, exact.draws);
    for draws in [100, 1_000, 10_000] {
        let mc = rademacher_mc(&m, draws, 1)?;
        println!("mc {draws:>6}    {:.6} ± {:.6}", mc.value, mc.stderr);
    }
    println!("massart      {:.6}", massart_bound(rows, 1.0, n));
    Ok(())
}
