//! Steiner points: extra points that pull the covering diameter of a set
//! down to a target radius without changing its diameter or its covering
//! number at that radius.
//!
//! A point is isolated at radius ε when its nearest neighbour is farther than
//! ε; isolated points are necessarily centres of every internal ε-cover. For
//! each isolated point `a` with nearest neighbour `b` we add
//! `p = a + t (b - a) / d(a, b)` with `t = min(ε, (ν(a) - ε) / 2)`. Then
//! `p` lies on a segment of the convex hull, `ν(a), ν(p) <= ε`, and every
//! point of the original set other than `a` stays farther than ε from `p`, so
//! any cover that uses `p` as a centre can swap it for `a`.

use serde::Serialize;

use super::cover::covering_number;
use crate::error::{invalid, Error, Result};
use crate::limits::SolverLimits;
use crate::metric::{covering_diameter, default_focal_tol, diameter, nn_distances, PointCloud, Vector};

/// Relative slack on `ε` for isolation and for the `∇ <= ε` check. Without
/// it a neighbour at `ε` plus one ulp yields a Steiner point that sits on
/// top of its anchor and is merged away by deduplication.
pub const STEINER_RTOL: f64 = 1e-7;

pub fn steiner_augment(c: &PointCloud, eps: f64) -> Result<Vec<Vector>> {
    let delta = diameter(c);
    if !(eps > 0.0 && eps < delta) {
        return invalid(format!("radius must lie in (0, {delta}), got {eps}"));
    }
    let nabla = covering_diameter(c)?;
    if nabla >= delta - default_focal_tol(c) {
        return Err(Error::Focal { nabla, delta });
    }
    let nu = nn_distances(c)?;
    let min_gap = nu.iter().copied().fold(f64::INFINITY, f64::min);
    if eps < min_gap {
        return invalid(format!(
            "every point is isolated at radius {eps} (closest pair {min_gap}); \
             fewer Steiner points than set points cannot exist"
        ));
    }
    let n = c.len();
    let mut out = Vec::new();
    for a in 0..n {
        if nu[a] <= eps * (1.0 + STEINER_RTOL) {
            continue;
        }
        let b = (0..n)
            .filter(|&j| j != a)
            .min_by(|&x, &y| c.dist(a, x).total_cmp(&c.dist(a, y)).then(x.cmp(&y)))
            .expect("at least two points");
        let dab = c.dist(a, b);
        let mut t = eps.min(0.5 * (nu[a] - eps));
        let pa = c.point(a).coords();
        let pb = c.point(b).coords();
        // rounding can leave p an ulp beyond ε from a; pull it back
        let p = loop {
            let p = c.point(a).map(|j, x| x + t / dab * (pb[j] - pa[j]));
            if c.metric().distance(c.point(a), &p)? <= eps {
                break p;
            }
            t *= 1.0 - 1e-9;
        };
        out.push(p);
    }
    Ok(out)
}

/// Outcome of checking the three Steiner-point properties.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SteinerCheck {
    pub added: usize,
    pub cardinality_ok: bool,
    pub nabla_after: f64,
    pub nabla_ok: bool,
    pub delta_ok: bool,
    pub cover_before: usize,
    pub cover_after: usize,
    pub cover_ok: bool,
    /// Both covering numbers were solved exactly.
    pub exact: bool,
}

impl SteinerCheck {
    pub fn all_ok(&self) -> bool {
        self.cardinality_ok && self.nabla_ok && self.delta_ok && self.cover_ok && self.exact
    }
}

/// Checks `|P| < |C|`, `∇(C ∪ P) <= ε`, `Δ(C ∪ P) = Δ(C)` (to 1e-12
/// relative) and `N(C, ε) = N(C ∪ P, ε)`.
pub fn check_steiner(c: &PointCloud, p: &[Vector], eps: f64, limits: &SolverLimits) -> Result<SteinerCheck> {
    let aug = c.union(p)?;
    let delta = diameter(c);
    let before = covering_number(c, eps, limits)?;
    let after = covering_number(&aug, eps, limits)?;
    let nabla_after = covering_diameter(&aug)?;
    Ok(SteinerCheck {
        added: p.len(),
        cardinality_ok: p.len() < c.len() && aug.len() == c.len() + p.len(),
        nabla_after,
        nabla_ok: nabla_after <= eps * (1.0 + STEINER_RTOL),
        delta_ok: (diameter(&aug) - delta).abs() <= 1e-12 * delta,
        cover_before: before.count,
        cover_after: after.count,
        cover_ok: before.count == after.count,
        exact: before.exact && after.exact,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metric::Metric;

    fn cloud(xs: &[f64]) -> PointCloud {
        PointCloud::from_scalars(xs, Metric::Linf).unwrap()
    }

    // radii equal to a gap, tiny gaps far from the origin: both used to fail
    // in floating point (merged points, an ulp past ε)
    #[test]
    fn borderline_radii() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let limits = SolverLimits::default();
        for _ in 0..200 {
            let mut x = 0.4 + rng.random::<f64>() * 0.1;
            let mut xs = vec![x];
            for _ in 0..rng.random_range(3..10) {
                x += [1e-5, 3e-5, 7e-4, 2e-2][rng.random_range(0..4)] * (1.0 + rng.random::<f64>());
                xs.push(x);
            }
            let c = cloud(&xs);
            let nabla = covering_diameter(&c).unwrap();
            for w in xs.windows(2) {
                let eps = w[1] - w[0];
                if eps >= nabla || eps < nn_distances(&c).unwrap().into_iter().fold(f64::INFINITY, f64::min) {
                    continue;
                }
                let p = steiner_augment(&c, eps).unwrap();
                let chk = check_steiner(&c, &p, eps, &limits).unwrap();
                assert!(chk.all_ok(), "{xs:?} at {eps}: {chk:?}");
            }
        }
    }

    #[test]
    fn outlier_gets_one_point() {
        let c = cloud(&[0.0, 1.0, 10.0]);
        let p = steiner_augment(&c, 1.0).unwrap();
        assert_eq!(p, vec![Vector::scalar(9.0)]);
        let chk = check_steiner(&c, &p, 1.0, &SolverLimits::default()).unwrap();
        assert!(chk.all_ok(), "{chk:?}");
        assert_eq!(chk.nabla_after, 1.0);
    }

    #[test]
    fn nothing_isolated_means_nothing_added() {
        let c = cloud(&[0.0, 1.0, 2.0, 3.0]);
        assert!(steiner_augment(&c, 1.5).unwrap().is_empty());
    }

    #[test]
    fn close_pair_keeps_internal_cover_count() {
        // a naive point at distance exactly eps from 0 would land on 1 and
        // cover 1.5 as well
        let c = cloud(&[0.0, 1.5, 3.0, 3.6]);
        let p = steiner_augment(&c, 1.0).unwrap();
        let chk = check_steiner(&c, &p, 1.0, &SolverLimits::default()).unwrap();
        assert!(chk.all_ok(), "{chk:?}");
    }

    #[test]
    fn rejects_bad_radius() {
        let c = cloud(&[0.0, 1.0, 10.0]);
        assert!(steiner_augment(&c, 0.0).is_err());
        assert!(steiner_augment(&c, 10.0).is_err());
        assert!(steiner_augment(&c, 0.5).is_err());
        assert!(steiner_augment(&cloud(&[0.0, 1.0]), 0.5).is_err());
    }
}
