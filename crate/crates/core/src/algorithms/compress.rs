use std::cmp::Ordering;

use super::Learner;
use crate::error::{invalid, Error, Result};
use crate::metric::{Metric, Vector};

fn lex(a: &Vector, b: &Vector) -> Ordering {
    a.coords()
        .iter()
        .zip(b.coords())
        .map(|(x, y)| x.total_cmp(y))
        .find(|o| o.is_ne())
        .unwrap_or(Ordering::Equal)
}

/// k-compression: farthest-point selection of `k` sample points (Euclidean),
/// then their coordinate-wise mean.
///
/// Selection starts from the lexicographically smallest point and repeatedly
/// adds the point whose distance to the selected set is largest, breaking
/// ties lexicographically. Both steps only look at point values, so the
/// output does not depend on sample order.
pub fn compress_k(sample: &[Vector], k: usize) -> Result<(Vec<Vector>, Vector)> {
    if k == 0 {
        return invalid("k must be at least 1");
    }
    if k > sample.len() {
        return invalid(format!("k = {k} exceeds the sample size {}", sample.len()));
    }
    let dim = sample[0].dim();
    if let Some(p) = sample.iter().find(|p| p.dim() != dim) {
        return Err(Error::DimensionMismatch {
            expected: dim,
            got: p.dim(),
        });
    }
    let mut order: Vec<usize> = (0..sample.len()).collect();
    order.sort_by(|&i, &j| lex(&sample[i], &sample[j]));
    let mut taken = vec![false; sample.len()];
    let mut gap = vec![f64::INFINITY; sample.len()];
    let mut chosen = Vec::with_capacity(k);
    let mut next = order[0];
    for _ in 0..k {
        taken[next] = true;
        chosen.push(sample[next].clone());
        for &i in &order {
            let d = Metric::L2.distance_unchecked(sample[i].coords(), sample[next].coords());
            gap[i] = gap[i].min(d);
        }
        // strict comparison over lexicographic order keeps the smallest on ties
        let mut best: Option<usize> = None;
        for &i in order.iter().filter(|&&i| !taken[i]) {
            if best.is_none_or(|b| gap[i] > gap[b]) {
                best = Some(i);
            }
        }
        match best {
            Some(b) => next = b,
            None => break,
        }
    }
    let mean = (0..dim)
        .map(|j| chosen.iter().map(|p| p.coords()[j]).sum::<f64>() / k as f64)
        .collect();
    Ok((chosen, Vector::new(mean)?))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CompressK {
    pub k: usize,
}

impl Learner for CompressK {
    fn fit(&self, sample: &[Vector], _seed: u64) -> Result<Vector> {
        compress_k(sample, self.k).map(|(_, theta)| theta)
    }

    fn name(&self) -> String {
        format!("compress_k({})", self.k)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(xs: &[f64]) -> Vec<Vector> {
        xs.iter().map(|&x| Vector::scalar(x)).collect()
    }

    #[test]
    fn hand_trace() {
        let (sub, theta) = compress_k(&s(&[0.0, 1.0, 10.0]), 2).unwrap();
        assert_eq!(sub, s(&[0.0, 10.0]));
        assert_eq!(theta, Vector::scalar(5.0));
    }

    #[test]
    fn edge_k() {
        let (_, theta) = compress_k(&s(&[3.0, 1.0, 2.0]), 3).unwrap();
        assert_eq!(theta, Vector::scalar(2.0));
        let (sub, _) = compress_k(&s(&[3.0, 1.0, 2.0]), 1).unwrap();
        assert_eq!(sub, s(&[1.0]));
        assert!(compress_k(&s(&[1.0]), 2).is_err());
        assert!(compress_k(&s(&[1.0]), 0).is_err());
    }

    #[test]
    fn order_independent() {
        let a = s(&[0.3, 0.9, 0.1, 0.5, 0.7, 0.9]);
        let mut b = a.clone();
        b.reverse();
        for k in 1..=a.len() {
            assert_eq!(compress_k(&a, k).unwrap().1, compress_k(&b, k).unwrap().1);
        }
    }
}
