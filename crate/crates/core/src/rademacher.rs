//! Empirical Rademacher complexity of a finite set of loss vectors.
//!
//! For a loss matrix `M` (rows = parameters, columns = sample points) the
//! quantity is `(1/n) E_σ max_r Σ_i σ_i M[r][i]` over uniform signs. Columns
//! are mean-centred first. The expectation is unchanged by a per-column
//! shift; the Monte Carlo estimator only gets lower variance.
//!
//! Random signs come from `ChaCha8Rng::seed_from_u64(seed)` (rand_chacha
//! 0.9), one `bool` draw per sign in column order.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::fractal::covering_number;
use crate::limits::SolverLimits;
use crate::metric::PointCloud;

/// Identifier of the sign generator, recorded in run manifests.
pub const PRNG_ID: &str = "chacha8/rand_chacha-0.9/seed_from_u64";

/// Losses `ℓ(θ_r, z_i)` with entries inside `[range_a, range_a + range_b]`.
#[derive(Debug, Clone, PartialEq)]
pub struct LossMatrix {
    rows: Vec<Vec<f64>>,
    range_a: f64,
    range_b: f64,
}

impl LossMatrix {
    pub fn new(rows: Vec<Vec<f64>>, range_a: f64, range_b: f64) -> Result<Self> {
        if rows.is_empty() || rows[0].is_empty() {
            return invalid("loss matrix needs at least one row and one column");
        }
        if !(range_b > 0.0) || !range_a.is_finite() || !range_b.is_finite() {
            return invalid("loss range width must be positive and finite");
        }
        let n = rows[0].len();
        let slack = 1e-12 * (1.0 + range_a.abs() + range_b);
        for (r, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    got: row.len(),
                });
            }
            if let Some(v) = row
                .iter()
                .find(|&&v| !(v >= range_a - slack && v <= range_a + range_b + slack))
            {
                return invalid(format!(
                    "row {r}: entry {v} outside [{range_a}, {}]",
                    range_a + range_b
                ));
            }
        }
        Ok(Self {
            rows,
            range_a,
            range_b,
        })
    }

    /// Uses the observed min and span as the declared range.
    pub fn from_rows(rows: Vec<Vec<f64>>) -> Result<Self> {
        let lo = rows.iter().flatten().copied().fold(f64::INFINITY, f64::min);
        let hi = rows.iter().flatten().copied().fold(f64::NEG_INFINITY, f64::max);
        let width = if hi > lo { hi - lo } else { 1.0 };
        Self::new(rows, lo, width)
    }

    pub fn rows(&self) -> &[Vec<f64>] {
        &self.rows
    }

    pub fn n_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn n_cols(&self) -> usize {
        self.rows[0].len()
    }

    pub fn range_a(&self) -> f64 {
        self.range_a
    }

    pub fn range_b(&self) -> f64 {
        self.range_b
    }

    /// Subtracts every column's mean. Entries end up in `[-b, b]`.
    pub fn centered(&self) -> LossMatrix {
        let n = self.n_cols();
        let k = self.n_rows() as f64;
        let means: Vec<f64> = (0..n)
            .map(|i| self.rows.iter().map(|r| r[i]).sum::<f64>() / k)
            .collect();
        let rows = self
            .rows
            .iter()
            .map(|r| r.iter().zip(&means).map(|(v, m)| v - m).collect())
            .collect();
        LossMatrix {
            rows,
            range_a: -self.range_b,
            range_b: 2.0 * self.range_b,
        }
    }

    /// Reads a headerless or headed numeric CSV; a first row that does not
    /// parse as numbers is treated as a header.
    pub fn read_csv(path: &std::path::Path) -> Result<Self> {
        let mut r = csv::ReaderBuilder::new().has_headers(false).from_path(path)?;
        let mut rows = Vec::new();
        for (k, rec) in r.records().enumerate() {
            let rec = rec?;
            let parsed: std::result::Result<Vec<f64>, _> = rec.iter().map(|s| s.trim().parse::<f64>()).collect();
            match parsed {
                Ok(row) => rows.push(row),
                Err(_) if k == 0 => continue,
                Err(e) => return invalid(format!("row {k}: {e}")),
            }
        }
        Self::from_rows(rows)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RadMode {
    Exact,
    Mc,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RadEstimate {
    pub value: f64,
    pub stderr: f64,
    pub mode: RadMode,
    pub draws: u64,
}

/// Exhaustive average over all `2^n` sign vectors.
///
/// Row sums are split into a low and a high half of the columns, each
/// tabulated once, so every sign vector costs one pass over the rows.
pub fn rademacher_exact(m: &LossMatrix, exact_n_limit: usize) -> Result<RadEstimate> {
    let n = m.n_cols();
    if n > exact_n_limit || n > 30 {
        return Err(Error::LimitExceeded {
            what: "exact Rademacher enumeration",
            limit_name: "exact_n_limit",
            limit: exact_n_limit.min(30),
            value: n,
        });
    }
    let c = m.centered();
    let rows = c.n_rows();
    let n_lo = n / 2;
    let n_hi = n - n_lo;
    let half_sums = |offset: usize, width: usize| -> Vec<f64> {
        let mut t = vec![0.0; (1usize << width) * rows];
        for mask in 0..(1usize << width) {
            for (r, row) in c.rows.iter().enumerate() {
                let mut s = 0.0;
                for j in 0..width {
                    let v = row[offset + j];
                    s += if mask >> j & 1 == 1 { v } else { -v };
                }
                t[mask * rows + r] = s;
            }
        }
        t
    };
    let lo = half_sums(0, n_lo);
    let hi = half_sums(n_lo, n_hi);
    let mut total = 0.0;
    for h in 0..(1usize << n_hi) {
        let hrow = &hi[h * rows..(h + 1) * rows];
        let mut sub = 0.0;
        for l in 0..(1usize << n_lo) {
            let lrow = &lo[l * rows..(l + 1) * rows];
            let best = lrow
                .iter()
                .zip(hrow)
                .map(|(a, b)| a + b)
                .fold(f64::NEG_INFINITY, f64::max);
            sub += best;
        }
        total += sub;
    }
    let draws = 1u64 << n;
    Ok(RadEstimate {
        value: total / draws as f64 / n as f64,
        stderr: 0.0,
        mode: RadMode::Exact,
        draws,
    })
}

/// Monte Carlo estimate over `draws` uniform sign vectors.
pub fn rademacher_mc(m: &LossMatrix, draws: u64, seed: u64) -> Result<RadEstimate> {
    if draws < 2 {
        return invalid("Monte Carlo estimate needs at least two draws");
    }
    let c = m.centered();
    let n = c.n_cols();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut signs = vec![0.0; n];
    let mut mean = 0.0;
    let mut m2 = 0.0;
    for k in 0..draws {
        for s in signs.iter_mut() {
            *s = if rng.random::<bool>() { 1.0 } else { -1.0 };
        }
        let stat = c
            .rows
            .iter()
            .map(|row| row.iter().zip(&signs).map(|(v, s)| v * s).sum::<f64>())
            .fold(f64::NEG_INFINITY, f64::max)
            / n as f64;
        // Welford
        let delta = stat - mean;
        mean += delta / (k + 1) as f64;
        m2 += delta * (stat - mean);
    }
    let var = m2 / (draws - 1) as f64;
    Ok(RadEstimate {
        value: mean,
        stderr: (var / draws as f64).sqrt(),
        mode: RadMode::Mc,
        draws,
    })
}

/// `b sqrt(2 ln(rows) / n)`.
pub fn massart_bound(rows: usize, b: f64, n: usize) -> f64 {
    if rows <= 1 {
        return 0.0;
    }
    b * (2.0 * (rows as f64).ln() / n as f64).sqrt()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CoveringRadBound {
    pub best_eps: f64,
    pub bound: f64,
    /// `(eps, N(C, eps), L eps + b sqrt(2 ln N / n))` per grid point.
    pub table: Vec<(f64, usize, f64)>,
    /// All covering numbers were exact.
    pub exact: bool,
}

/// Minimises `L ε + b sqrt(2 ln N(C, ε) / n)` over the grid. Ties go to the
/// earlier grid entry.
pub fn covering_rad_bound(
    c: &PointCloud,
    l: f64,
    b: f64,
    n: usize,
    eps_grid: &[f64],
    limits: &SolverLimits,
) -> Result<CoveringRadBound> {
    if eps_grid.is_empty() {
        return invalid("radius grid is empty");
    }
    if n == 0 {
        return invalid("n must be positive");
    }
    let mut table = Vec::with_capacity(eps_grid.len());
    let mut exact = true;
    for &eps in eps_grid {
        let cov = covering_number(c, eps, limits)?;
        exact &= cov.exact;
        let v = l * eps + massart_bound(cov.count, b, n);
        table.push((eps, cov.count, v));
    }
    let (best_eps, _, bound) = table
        .iter()
        .copied()
        .fold((f64::NAN, 0, f64::INFINITY), |acc, t| if t.2 < acc.2 { t } else { acc });
    Ok(CoveringRadBound {
        best_eps,
        bound,
        table,
        exact,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metric::Metric;

    fn mat(rows: &[&[f64]]) -> LossMatrix {
        LossMatrix::from_rows(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    /// Direct enumeration without centering or splitting.
    fn brute(m: &LossMatrix) -> f64 {
        let n = m.n_cols();
        let mut total = 0.0;
        for mask in 0u32..(1 << n) {
            let best = m
                .rows()
                .iter()
                .map(|row| {
                    (0..n)
                        .map(|i| if mask >> i & 1 == 1 { row[i] } else { -row[i] })
                        .sum::<f64>()
                })
                .fold(f64::NEG_INFINITY, f64::max);
            total += best;
        }
        total / (1u64 << n) as f64 / n as f64
    }

    #[test]
    fn hand_values() {
        let r = rademacher_exact(&mat(&[&[0.0], &[1.0]]), 20).unwrap();
        assert!((r.value - 0.5).abs() < 1e-12);
        assert_eq!(r.draws, 2);
        let r = rademacher_exact(&mat(&[&[0.0, 0.0], &[1.0, 1.0]]), 20).unwrap();
        assert!((r.value - 0.25).abs() < 1e-12);
        let r = rademacher_exact(&mat(&[&[0.3, 0.9, 0.1]]), 20).unwrap();
        assert_eq!(r.value, 0.0);
        assert_eq!(r.stderr, 0.0);
    }

    #[test]
    fn exact_matches_direct_enumeration() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..50 {
            let n = rng.random_range(1..11);
            let k = rng.random_range(1..9);
            let rows: Vec<Vec<f64>> = (0..k).map(|_| (0..n).map(|_| rng.random()).collect()).collect();
            let m = LossMatrix::from_rows(rows).unwrap();
            let e = rademacher_exact(&m, 20).unwrap();
            assert!((e.value - brute(&m)).abs() < 1e-12);
        }
    }

    #[test]
    fn exact_rejects_large_n() {
        let m = LossMatrix::from_rows(vec![vec![0.5; 21], vec![0.1; 21]]).unwrap();
        assert!(matches!(rademacher_exact(&m, 20), Err(Error::LimitExceeded { .. })));
    }

    #[test]
    fn mc_cases() {
        let single = mat(&[&[0.2, 0.7, 0.4]]);
        let r = rademacher_mc(&single, 100, 9).unwrap();
        assert_eq!((r.value, r.stderr), (0.0, 0.0));

        let two = mat(&[&[0.0], &[1.0]]);
        let r = rademacher_mc(&two, 100_000, 42).unwrap();
        assert!((r.value - 0.5).abs() <= 3.0 * r.stderr);
        let again = rademacher_mc(&two, 100_000, 42).unwrap();
        assert_eq!(r.value.to_bits(), again.value.to_bits());
        assert!(rademacher_mc(&two, 1, 0).is_err());
    }

    #[test]
    fn massart_values() {
        assert_eq!(massart_bound(1, 3.0, 5), 0.0);
        assert!((massart_bound(2, 1.0, 4) - 0.58870).abs() < 1e-5);
        assert!((massart_bound(120, 1.0, 8) - 1.09400).abs() < 1e-4);
    }

    #[test]
    fn matrix_validation() {
        assert!(LossMatrix::new(vec![], 0.0, 1.0).is_err());
        assert!(LossMatrix::new(vec![vec![2.0]], 0.0, 1.0).is_err());
        assert!(LossMatrix::new(vec![vec![0.5], vec![0.5, 0.1]], 0.0, 1.0).is_err());
        assert!(LossMatrix::new(vec![vec![0.5]], 0.0, 0.0).is_err());
    }

    #[test]
    fn covering_bound_cases() {
        let lim = SolverLimits::default();
        let single = PointCloud::from_scalars(&[0.4], Metric::Linf).unwrap();
        let r = covering_rad_bound(&single, 1.0, 1.0, 10, &[0.5, 0.1], &lim).unwrap();
        assert_eq!(r.table[0].2, 0.5);
        assert!((r.bound - 0.1).abs() < 1e-15);

        let c = PointCloud::from_scalars(&[0.0, 0.01, 0.02, 0.03], Metric::Linf).unwrap();
        let r = covering_rad_bound(&c, 1.0, 1.0, 100, &[0.01], &lim).unwrap();
        assert_eq!(r.table[0].1, 2);
        assert!((r.bound - (0.01 + (2.0 * 2f64.ln() / 100.0).sqrt())).abs() < 1e-12);
        assert!((r.bound - 0.12774).abs() < 1e-5);
        let r = covering_rad_bound(&c, 1.0, 1.0, 100, &[0.05], &lim).unwrap();
        assert_eq!(r.bound, 0.05);
        assert!(covering_rad_bound(&c, 1.0, 1.0, 100, &[], &lim).is_err());
    }
}
