use super::Learner;
use crate::error::{invalid, Result};
use crate::metric::Vector;

/// ERM for 1-D thresholds `x > t`, over the cuts at midpoints between
/// sorted distinct values plus the sentinels `±∞`. Ties go to the smallest
/// threshold.
pub fn vc_threshold_erm(sample: &[(f64, u8)]) -> Result<f64> {
    if let Some(&(_, y)) = sample.iter().find(|(_, y)| *y > 1) {
        return invalid(format!("labels must be 0 or 1, got {y}"));
    }
    if let Some(&(x, _)) = sample.iter().find(|(x, _)| !x.is_finite()) {
        return invalid(format!("non-finite feature {x}"));
    }
    let mut xs: Vec<f64> = sample.iter().map(|p| p.0).collect();
    xs.sort_by(f64::total_cmp);
    xs.dedup();
    let mut cuts = Vec::with_capacity(xs.len() + 1);
    cuts.push(f64::NEG_INFINITY);
    cuts.extend(xs.windows(2).map(|w| 0.5 * (w[0] + w[1])));
    cuts.push(f64::INFINITY);
    let errors = |t: f64| sample.iter().filter(|&&(x, y)| (x > t) != (y == 1)).count();
    let mut best = cuts[0];
    let mut best_err = errors(best);
    for &t in &cuts[1..] {
        let e = errors(t);
        if e < best_err {
            best = t;
            best_err = e;
        }
    }
    Ok(best)
}

/// Threshold ERM on points `(x, y)`. The infinite sentinels are reported as
/// `lo - 1` and `hi + 1`, which classify every point of `[lo, hi]` the same
/// way.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThresholdLearner {
    pub lo: f64,
    pub hi: f64,
}

impl Learner for ThresholdLearner {
    fn fit(&self, sample: &[Vector], _seed: u64) -> Result<Vector> {
        let mut pairs = Vec::with_capacity(sample.len());
        for z in sample {
            let c = z.coords();
            if c.len() != 2 || !(c[1] == 0.0 || c[1] == 1.0) {
                return invalid(format!("threshold learner expects (x, y) with y in {{0, 1}}, got {c:?}"));
            }
            pairs.push((c[0], c[1] as u8));
        }
        let t = vc_threshold_erm(&pairs)?;
        Ok(Vector::scalar(if t == f64::NEG_INFINITY {
            self.lo - 1.0
        } else if t == f64::INFINITY {
            self.hi + 1.0
        } else {
            t
        }))
    }

    fn name(&self) -> String {
        "vc_threshold".into()
    }
}
