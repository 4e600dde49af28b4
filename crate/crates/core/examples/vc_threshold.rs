//! Threshold ERM on noisy labels and the VC bound for V = 1.

use arc_bounds::algorithms::vc_threshold_erm;
use arc_bounds::lab::vc_rhs;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn main() -> arc_bounds::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for n in [6, 12, 24, 48] {
        let sample: Vec<(f64, u8)> = (0..n)
            .map(|_| {
                let x: f64 = rng.random();
                let y = u8::from(x > 0.4) ^ u8::from(rng.random::<f64>() < 0.1);
                (x, y)
            })
            .collect();
        println!("n = {n:>2}: threshold {:+.3}, VC bound {:.4}", vc_threshold_erm(&sample)?, vc_rhs(1, n)?);
    }
    Ok(())
}
