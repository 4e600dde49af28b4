use serde::Serialize;

use super::setcover;
use crate::error::{invalid, Result};
use crate::limits::SolverLimits;
use crate::metric::{DistanceMatrix, PointCloud};

/// An ε-cover of a cloud by closed balls centred at cloud points.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CoverResult {
    pub count: usize,
    /// `(center, members of the ball around center)`, members ascending.
    pub cover: Vec<(usize, Vec<usize>)>,
    /// False when the count is only a greedy upper bound.
    pub exact: bool,
}

/// Minimum number of radius-`eps` balls centred at points of `c` needed to
/// cover `c`.
///
/// One-dimensional clouds are solved exactly by a left-to-right sweep at any
/// size. Otherwise clouds with at most `limits.exact_limit` points go through
/// branch and bound; larger ones get the greedy count, marked exact only when it meets a
/// packing lower bound.
pub fn covering_number(c: &PointCloud, eps: f64, limits: &SolverLimits) -> Result<CoverResult> {
    if !(eps > 0.0) || !eps.is_finite() {
        return invalid(format!("covering radius must be positive and finite, got {eps}"));
    }
    if c.dim() == 1 {
        return Ok(sweep_1d(c, eps));
    }
    let d = c.distance_matrix();
    let n = c.len();
    let balls: Vec<Vec<usize>> = (0..n).map(|i| ball(&d, i, eps)).collect();
    let chosen = if n <= limits.exact_limit.min(64) {
        let sol = setcover::exact(&balls, n, limits.node_budget).expect("balls cover their centers");
        (sol.chosen, sol.exact)
    } else {
        let g = setcover::greedy(&balls, n).expect("balls cover their centers");
        let certified = g.len() == packing_lower_bound(&d, eps);
        (g, certified)
    };
    Ok(CoverResult {
        count: chosen.0.len(),
        cover: chosen.0.into_iter().map(|i| (i, balls[i].clone())).collect(),
        exact: chosen.1,
    })
}

/// Size of a greedy set of points pairwise more than `2 eps` apart. No ball
/// holds two of them, so this bounds the covering number from below.
fn packing_lower_bound(d: &DistanceMatrix, eps: f64) -> usize {
    let mut picked: Vec<usize> = Vec::new();
    for i in 0..d.len() {
        if picked.iter().all(|&j| d.get(i, j) > 2.0 * eps) {
            picked.push(i);
        }
    }
    picked.len()
}

fn ball(d: &DistanceMatrix, center: usize, eps: f64) -> Vec<usize> {
    (0..d.len()).filter(|&j| d.get(center, j) <= eps).collect()
}

fn sweep_1d(c: &PointCloud, eps: f64) -> CoverResult {
    let mut order: Vec<usize> = (0..c.len()).collect();
    order.sort_by(|&a, &b| c.point(a).coords()[0].total_cmp(&c.point(b).coords()[0]));
    let mut cover = Vec::new();
    let mut i = 0;
    while i < order.len() {
        // farthest-right center that still reaches the leftmost uncovered point
        let mut j = i;
        while j + 1 < order.len() && c.dist(order[i], order[j + 1]) <= eps {
            j += 1;
        }
        let center = order[j];
        let mut members: Vec<usize> = order
            .iter()
            .copied()
            .filter(|&k| c.dist(center, k) <= eps)
            .collect();
        members.sort_unstable();
        let mut next = j + 1;
        while next < order.len() && c.dist(center, order[next]) <= eps {
            next += 1;
        }
        cover.push((center, members));
        i = next;
    }
    CoverResult {
        count: cover.len(),
        cover,
        exact: true,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metric::{Metric, Vector};

    fn cloud(xs: &[f64]) -> PointCloud {
        PointCloud::from_scalars(xs, Metric::Linf).unwrap()
    }

    /// Smallest subset of centers whose balls cover everything.
    fn brute_cover(c: &PointCloud, eps: f64) -> usize {
        let n = c.len();
        (0u32..(1 << n))
            .filter(|fam| {
                (0..n).all(|p| (0..n).any(|q| fam >> q & 1 == 1 && c.dist(p, q) <= eps))
            })
            .map(|fam| fam.count_ones() as usize)
            .min()
            .unwrap()
    }

    fn check(c: &PointCloud, r: &CoverResult, eps: f64) {
        let mut seen = vec![false; c.len()];
        for (center, members) in &r.cover {
            for &m in members {
                assert!(c.dist(*center, m) <= eps);
                seen[m] = true;
            }
        }
        assert!(seen.iter().all(|&s| s));
        assert_eq!(r.count, r.cover.len());
    }

    #[test]
    fn four_points_radius_one() {
        let c = cloud(&[0.0, 1.0, 2.0, 3.0]);
        let r = covering_number(&c, 1.0, &SolverLimits::default()).unwrap();
        assert_eq!(r.count, 2);
        assert_eq!(brute_cover(&c, 1.0), 2);
        assert!(r.exact);
        check(&c, &r, 1.0);
    }

    #[test]
    fn extremes() {
        let c = cloud(&[0.0, 0.3, 1.1, 2.0]);
        let lim = SolverLimits::default();
        assert_eq!(covering_number(&c, 2.0, &lim).unwrap().count, 1);
        assert_eq!(covering_number(&c, 0.2, &lim).unwrap().count, 4);
        assert!(covering_number(&c, 0.0, &lim).is_err());
        assert!(covering_number(&c, -1.0, &lim).is_err());
    }

    #[test]
    fn sweep_and_branch_and_bound_agree_with_brute_force() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let lim = SolverLimits::default();
        for _ in 0..150 {
            let n = rng.random_range(1..12);
            let dim = rng.random_range(1..4);
            let pts: Vec<Vector> = (0..n)
                .map(|_| Vector::new((0..dim).map(|_| rng.random::<f64>()).collect()).unwrap())
                .collect();
            let metric = if rng.random_bool(0.5) { Metric::Linf } else { Metric::L2 };
            let c = crate::metric::dedup(pts, metric, 0.0).unwrap();
            let eps = rng.random_range(0.05..0.8);
            let r = covering_number(&c, eps, &lim).unwrap();
            assert!(r.exact);
            assert_eq!(r.count, brute_cover(&c, eps), "{c:?} eps={eps}");
            check(&c, &r, eps);
        }
    }

    #[test]
    fn greedy_above_limit_is_flagged() {
        let pts: Vec<Vector> = (0..30)
            .map(|i| Vector::new(vec![i as f64, (i * i % 7) as f64]).unwrap())
            .collect();
        let c = PointCloud::new(pts, Metric::Linf, 0.0).unwrap();
        let r = covering_number(&c, 1.5, &SolverLimits::default()).unwrap();
        assert!(!r.exact);
        check(&c, &r, 1.5);
    }

    #[test]
    fn greedy_certified_by_packing() {
        // well separated clusters: greedy meets the packing bound
        let pts: Vec<Vector> = (0..30)
            .map(|i| Vector::new(vec![(i / 3) as f64 * 10.0 + (i % 3) as f64 * 0.1, 0.0]).unwrap())
            .collect();
        let c = PointCloud::new(pts, Metric::L2, 0.0).unwrap();
        let r = covering_number(&c, 0.2, &SolverLimits::default()).unwrap();
        assert_eq!(r.count, 10);
        assert!(r.exact);
        check(&c, &r, 0.2);
    }
}
