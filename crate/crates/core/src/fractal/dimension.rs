//! Finite Minkowski dimension of finite sets and the bounds built on it.
//!
//! All logarithms are natural. For a non-focal cloud with more than two
//! points the dimension is `ln T(C) / ln(Δ(C)/∇(C))`, where `T(C)` is the
//! size of the smallest 2-cover with member diameters at most `∇(C)`.
//! Singletons have dimension 0 and focal sets (including every two-point set)
//! have dimension `+∞`.

use serde::Serialize;

use super::cover::covering_number;
use super::two_cover::{min_two_cover, subset_diameter};
use crate::error::{invalid, Error, Result};
use crate::limits::SolverLimits;
use crate::metric::{covering_diameter, default_focal_tol, diameter, PointCloud};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DimResult {
    /// Dimension in natural-log convention; `+∞` for focal sets.
    pub value: f64,
    pub focal: bool,
    /// `T(C)`; absent for singletons and focal sets.
    #[serde(rename = "T")]
    pub t: Option<usize>,
    pub delta: f64,
    pub nabla: f64,
    /// False when `T` came from the greedy fallback (then `value` is an
    /// upper estimate).
    pub exact: bool,
}

pub fn dim_fm(c: &PointCloud, limits: &SolverLimits) -> Result<DimResult> {
    let delta = diameter(c);
    if c.len() == 1 {
        return Ok(DimResult {
            value: 0.0,
            focal: false,
            t: None,
            delta,
            nabla: 0.0,
            exact: true,
        });
    }
    let nabla = covering_diameter(c)?;
    if nabla >= delta - default_focal_tol(c) {
        return Ok(DimResult {
            value: f64::INFINITY,
            focal: true,
            t: None,
            delta,
            nabla,
            exact: true,
        });
    }
    let tc = min_two_cover(c, nabla, limits)?;
    Ok(DimResult {
        value: (tc.t as f64).ln() / (delta / nabla).ln(),
        focal: false,
        t: Some(tc.t),
        delta,
        nabla,
        exact: tc.exact,
    })
}

fn require_nonfocal(c: &PointCloud) -> Result<(f64, f64)> {
    if c.len() <= 2 {
        return invalid(format!("need more than two points, got {}", c.len()));
    }
    let delta = diameter(c);
    let nabla = covering_diameter(c)?;
    if nabla >= delta - default_focal_tol(c) {
        return Err(Error::Focal { nabla, delta });
    }
    Ok((delta, nabla))
}

/// Dimension from the general covering-measure definition, by enumeration.
///
/// For every admissible scale `d` (a realised subset diameter with
/// `∇(C) <= d < Δ(C)`) the minimum 2-cover size `T_d` is found by breadth-
/// first search over covered-point masks using *all* admissible subsets.
/// With `B^s_δ = min_{d <= δ} T_d d^s` and `B^s = max_δ B^s_δ`, the root of
/// `B^s = Δ^s` is found by bisection to within `s_tol`.
pub fn dim_fm_oracle(c: &PointCloud, s_tol: f64, limits: &SolverLimits) -> Result<f64> {
    if c.len() > limits.oracle_limit {
        return Err(Error::LimitExceeded {
            what: "2-cover enumeration",
            limit_name: "oracle_limit",
            limit: limits.oracle_limit,
            value: c.len(),
        });
    }
    if !(s_tol > 0.0) {
        return invalid("s_tol must be positive");
    }
    let (delta, nabla) = require_nonfocal(c)?;
    let n = c.len();
    let full = (1usize << n) - 1;

    let subsets: Vec<(usize, f64)> = (1..=full)
        .filter(|m: &usize| m.count_ones() >= 2)
        .map(|m| {
            let idx: Vec<usize> = (0..n).filter(|&i| m >> i & 1 == 1).collect();
            (m, subset_diameter(c, &idx))
        })
        .collect();
    let mut scales: Vec<f64> = subsets
        .iter()
        .map(|&(_, d)| d)
        .filter(|&d| d >= nabla && d < delta)
        .collect();
    scales.sort_by(f64::total_cmp);
    scales.dedup();

    // (ln T_d, ln d) for each admissible scale
    let terms: Vec<(f64, f64)> = scales
        .iter()
        .filter_map(|&d| {
            let sets: Vec<usize> = subsets.iter().filter(|s| s.1 <= d).map(|s| s.0).collect();
            bfs_cover_size(&sets, full).map(|t| ((t as f64).ln(), d.ln()))
        })
        .collect();
    if terms.is_empty() {
        return Err(Error::Focal { nabla, delta });
    }

    let ln_delta = delta.ln();
    // ln B^s - s ln Δ; strictly decreasing in s since every d < Δ
    let f = |s: f64| {
        let mut outer = f64::NEG_INFINITY;
        for k in 0..terms.len() {
            let inner = terms[..=k]
                .iter()
                .map(|&(lt, ld)| lt + s * ld)
                .fold(f64::INFINITY, f64::min);
            outer = outer.max(inner);
        }
        outer - s * ln_delta
    };
    let mut lo = 0.0;
    let mut hi = 1.0;
    while f(hi) > 0.0 {
        lo = hi;
        hi *= 2.0;
        if hi > 1e12 {
            return invalid("bisection bracket diverged");
        }
    }
    while hi - lo > s_tol * 0.5 {
        let mid = 0.5 * (lo + hi);
        if f(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Fewest admissible masks whose union is `full`.
fn bfs_cover_size(sets: &[usize], full: usize) -> Option<usize> {
    let mut dist = vec![usize::MAX; full + 1];
    dist[0] = 0;
    let mut frontier = vec![0usize];
    let mut level = 0;
    while !frontier.is_empty() {
        level += 1;
        let mut next = Vec::new();
        for &state in &frontier {
            for &s in sets {
                let u = state | s;
                if dist[u] == usize::MAX {
                    dist[u] = level;
                    if u == full {
                        return Some(level);
                    }
                    next.push(u);
                }
            }
        }
        frontier = next;
    }
    None
}

/// `ln(|C| - 1) / ln(Δ/∇)`, an upper bound on [`dim_fm`].
pub fn trivial_dim_bound(c: &PointCloud) -> Result<f64> {
    let (delta, nabla) = require_nonfocal(c)?;
    Ok(((c.len() - 1) as f64).ln() / (delta / nabla).ln())
}

/// `L ∇(F) + b sqrt(dim(F) ln(Δ/∇) / n)`, computed as `L ∇ + b sqrt(ln T / n)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FractalBound {
    pub value: f64,
    pub dim: DimResult,
}

pub fn fractal_bound(f: &PointCloud, l: f64, b: f64, n: usize, limits: &SolverLimits) -> Result<FractalBound> {
    if !(l >= 0.0 && b >= 0.0) || n == 0 {
        return invalid("fractal bound needs L >= 0, b >= 0, n >= 1");
    }
    require_nonfocal(f)?;
    let dim = dim_fm(f, limits)?;
    let t = dim.t.expect("non-focal set has T");
    let value = l * dim.nabla + b * ((t as f64).ln() / n as f64).sqrt();
    Ok(FractalBound { value, dim })
}

/// Least-squares slope of `ln N(C, ε)` against `ln(1/ε)` over `eps_grid`.
pub fn minkowski_slope_estimate(c: &PointCloud, eps_grid: &[f64], limits: &SolverLimits) -> Result<f64> {
    if eps_grid.len() < 2 || eps_grid.iter().any(|&e| !(e > 0.0) || !e.is_finite()) {
        return invalid("need at least two positive radii");
    }
    let mut distinct = eps_grid.to_vec();
    distinct.sort_by(f64::total_cmp);
    distinct.dedup();
    if distinct.len() < 2 {
        return invalid("radius grid is degenerate");
    }
    if c.len() == 1 {
        return Ok(0.0);
    }
    let xs: Vec<f64> = eps_grid.iter().map(|e| -e.ln()).collect();
    let ys: Vec<f64> = eps_grid
        .iter()
        .map(|&e| covering_number(c, e, limits).map(|r| (r.count as f64).ln()))
        .collect::<Result<_>>()?;
    Ok(ls_slope(&xs, &ys))
}

fn ls_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let k = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / k;
    let my = ys.iter().sum::<f64>() / k;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    sxy / sxx
}
