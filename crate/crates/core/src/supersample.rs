//! Ghost/primary supersamples, sign mixing, and the learner-output sets
//! Θ̂ⁿ (all sign mixings) and Θ̄ⁿ (all size-n subsets).

use std::collections::BTreeSet;
use std::path::PathBuf;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};
use statrs::distribution::{Continuous, ContinuousCDF, Normal};

use crate::algorithms::loss::uniform;
use crate::algorithms::Learner;
use crate::error::{invalid, Error, Result};
use crate::metric::{dedup, read_points_csv, Metric, PointCloud, Vector};

/// Data-generating distribution.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "dist", content = "params", rename_all = "snake_case", deny_unknown_fields)]
pub enum Distribution {
    UniformBox {
        #[serde(rename = "box")]
        bounds: Vec<[f64; 2]>,
    },
    /// Independent N(mean_j, std²) coordinates conditioned on the box.
    TruncGauss {
        mean: Vec<f64>,
        std: f64,
        #[serde(rename = "box")]
        bounds: Vec<[f64; 2]>,
    },
    /// Uniform over listed points (inline or loaded from a cloud CSV).
    Empirical {
        #[serde(default)]
        points: Vec<Vector>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        csv: Option<PathBuf>,
    },
    /// `z = (x, y)`: `x ~ U[lo, hi]`, `y = 1[x > threshold]` flipped with
    /// probability `noise`.
    LabeledThreshold { lo: f64, hi: f64, threshold: f64, noise: f64 },
}

impl Distribution {
    pub fn point_mass(z: Vector) -> Self {
        Distribution::Empirical {
            points: vec![z],
            csv: None,
        }
    }

    pub fn uniform_unit(dim: usize) -> Self {
        Distribution::UniformBox {
            bounds: vec![[0.0, 1.0]; dim],
        }
    }

    /// Loads CSV-backed points and checks parameters.
    pub fn resolve(mut self) -> Result<Self> {
        if let Distribution::Empirical { points, csv } = &mut self {
            if let Some(path) = csv.take() {
                points.extend(read_points_csv(&path)?);
            }
        }
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        let check_box = |b: &[[f64; 2]]| -> Result<()> {
            if b.is_empty() || b.iter().any(|[lo, hi]| !(lo <= hi) || !lo.is_finite() || !hi.is_finite()) {
                return invalid("distribution box needs finite bounds with lo <= hi");
            }
            Ok(())
        };
        match self {
            Distribution::UniformBox { bounds } => check_box(bounds),
            Distribution::TruncGauss { mean, std, bounds } => {
                check_box(bounds)?;
                if mean.len() != bounds.len() {
                    return Err(Error::DimensionMismatch {
                        expected: bounds.len(),
                        got: mean.len(),
                    });
                }
                if !(*std > 0.0) {
                    return invalid("trunc_gauss std must be positive");
                }
                for (m, [lo, hi]) in mean.iter().zip(bounds) {
                    let nd = Normal::new(*m, *std).map_err(|e| Error::InvalidInput(e.to_string()))?;
                    if nd.cdf(*hi) - nd.cdf(*lo) < 1e-6 {
                        return invalid("trunc_gauss box carries almost no mass");
                    }
                }
                Ok(())
            }
            Distribution::Empirical { points, csv } => {
                if points.is_empty() && csv.is_none() {
                    return invalid("empirical distribution needs points");
                }
                if let Some(p) = points.iter().find(|p| p.dim() != points[0].dim()) {
                    return Err(Error::DimensionMismatch {
                        expected: points[0].dim(),
                        got: p.dim(),
                    });
                }
                Ok(())
            }
            Distribution::LabeledThreshold { lo, hi, noise, .. } => {
                if !(lo < hi) || !(0.0..=0.5).contains(noise) {
                    return invalid("labeled_threshold needs lo < hi and noise in [0, 0.5]");
                }
                Ok(())
            }
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            Distribution::UniformBox { bounds } | Distribution::TruncGauss { bounds, .. } => bounds.len(),
            Distribution::Empirical { points, .. } => points.first().map_or(0, |p| p.dim()),
            Distribution::LabeledThreshold { .. } => 2,
        }
    }

    /// Smallest box containing the support.
    pub fn support_box(&self) -> Vec<[f64; 2]> {
        match self {
            Distribution::UniformBox { bounds } | Distribution::TruncGauss { bounds, .. } => bounds.clone(),
            Distribution::Empirical { points, .. } => (0..self.dim())
                .map(|j| {
                    let xs = points.iter().map(|p| p.coords()[j]);
                    [
                        xs.clone().fold(f64::INFINITY, f64::min),
                        xs.fold(f64::NEG_INFINITY, f64::max),
                    ]
                })
                .collect(),
            Distribution::LabeledThreshold { lo, hi, .. } => vec![[*lo, *hi], [0.0, 1.0]],
        }
    }

    pub fn sample(&self, rng: &mut impl Rng) -> Vector {
        match self {
            Distribution::UniformBox { bounds } => {
                Vector::from_raw(bounds.iter().map(|[lo, hi]| uniform(rng, *lo, *hi)).collect())
            }
            Distribution::TruncGauss { mean, std, bounds } => Vector::from_raw(
                mean.iter()
                    .zip(bounds)
                    .map(|(m, [lo, hi])| loop {
                        let x = m + std * rng.sample::<f64, _>(StandardNormal);
                        if *lo <= x && x <= *hi {
                            break x;
                        }
                    })
                    .collect(),
            ),
            Distribution::Empirical { points, .. } => points[rng.random_range(0..points.len())].clone(),
            Distribution::LabeledThreshold {
                lo,
                hi,
                threshold,
                noise,
            } => {
                let x = uniform(rng, *lo, *hi);
                let clean = x > *threshold;
                let flip = rng.random::<f64>() < *noise;
                Vector::from_raw(vec![x, if clean != flip { 1.0 } else { 0.0 }])
            }
        }
    }

    /// Per-coordinate `(mean, variance)` when available in closed form.
    pub fn moments(&self) -> Option<Vec<(f64, f64)>> {
        match self {
            Distribution::UniformBox { bounds } => Some(
                bounds
                    .iter()
                    .map(|[lo, hi]| (0.5 * (lo + hi), (hi - lo).powi(2) / 12.0))
                    .collect(),
            ),
            Distribution::TruncGauss { mean, std, bounds } => Some(
                mean.iter()
                    .zip(bounds)
                    .map(|(m, [lo, hi])| truncated_normal_moments(*m, *std, *lo, *hi))
                    .collect(),
            ),
            Distribution::Empirical { points, .. } => {
                let k = points.len() as f64;
                Some(
                    (0..self.dim())
                        .map(|j| {
                            let mu = points.iter().map(|p| p.coords()[j]).sum::<f64>() / k;
                            let var = points.iter().map(|p| (p.coords()[j] - mu).powi(2)).sum::<f64>() / k;
                            (mu, var)
                        })
                        .collect(),
                )
            }
            Distribution::LabeledThreshold { .. } => None,
        }
    }

    /// 0-1 risk of the classifier `x > t` under a labeled threshold
    /// distribution.
    pub fn threshold_risk(&self, t: f64) -> Option<f64> {
        match self {
            Distribution::LabeledThreshold {
                lo,
                hi,
                threshold,
                noise,
            } => {
                let tc = t.clamp(*lo, *hi);
                let star = threshold.clamp(*lo, *hi);
                let disagree = (tc - star).abs() / (hi - lo);
                Some(noise + (1.0 - 2.0 * noise) * disagree)
            }
            _ => None,
        }
    }
}

fn truncated_normal_moments(mu: f64, sd: f64, lo: f64, hi: f64) -> (f64, f64) {
    let std = Normal::new(0.0, 1.0).expect("standard normal");
    let a = (lo - mu) / sd;
    let b = (hi - mu) / sd;
    let z = std.cdf(b) - std.cdf(a);
    let (pa, pb) = (std.pdf(a), std.pdf(b));
    let mean = mu + sd * (pa - pb) / z;
    let var = sd * sd * (1.0 + (a * pa - b * pb) / z - ((pa - pb) / z).powi(2));
    (mean, var)
}

/// Ghost sample `s_minus` and primary sample `s_plus`.
#[derive(Debug, Clone, PartialEq)]
pub struct Supersample {
    pub s_minus: Vec<Vector>,
    pub s_plus: Vec<Vector>,
    pub seed: u64,
    pub dist_id: String,
}

impl Supersample {
    pub fn n(&self) -> usize {
        self.s_plus.len()
    }

    /// Interleaved `[s_minus[0], s_plus[0], s_minus[1], ...]`. Subsets taken
    /// in index order reproduce every sign mixing as an ordered sample.
    pub fn interleaved(&self) -> Vec<&Vector> {
        self.s_minus.iter().zip(&self.s_plus).flat_map(|(m, p)| [m, p]).collect()
    }

    /// Swaps `s_minus[i]` and `s_plus[i]`.
    pub fn swapped(&self, i: usize) -> Supersample {
        let mut out = self.clone();
        std::mem::swap(&mut out.s_minus[i], &mut out.s_plus[i]);
        out
    }
}

/// `2n` i.i.d. draws from `ChaCha8Rng::seed_from_u64(seed)`: the first `n`
/// form the ghost sample, the next `n` the primary sample.
pub fn draw_supersample(dist: &Distribution, n: usize, seed: u64) -> Result<Supersample> {
    if n == 0 {
        return invalid("sample size must be positive");
    }
    dist.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let s_minus: Vec<Vector> = (0..n).map(|_| dist.sample(&mut rng)).collect();
    let s_plus: Vec<Vector> = (0..n).map(|_| dist.sample(&mut rng)).collect();
    Ok(Supersample {
        s_minus,
        s_plus,
        seed,
        dist_id: dist_id(dist),
    })
}

fn dist_id(d: &Distribution) -> String {
    match d {
        Distribution::UniformBox { .. } => "uniform_box",
        Distribution::TruncGauss { .. } => "trunc_gauss",
        Distribution::Empirical { .. } => "empirical",
        Distribution::LabeledThreshold { .. } => "labeled_threshold",
    }
    .to_string()
}

/// Entries in `{-1, +1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignVector(Vec<i8>);

impl SignVector {
    pub fn new(signs: Vec<i8>) -> Result<Self> {
        if signs.iter().any(|&s| s != 1 && s != -1) {
            return invalid("sign vector entries must be -1 or +1");
        }
        Ok(Self(signs))
    }

    pub fn all(n: usize, sign: i8) -> Self {
        Self(vec![sign; n])
    }

    /// The `k`-th sign vector in lexicographic order (−1 before +1).
    pub fn from_index(k: u64, n: usize) -> Self {
        Self((0..n).map(|i| if k >> (n - 1 - i) & 1 == 1 { 1 } else { -1 }).collect())
    }

    pub fn signs(&self) -> &[i8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn flipped(&self, i: usize) -> Self {
        let mut s = self.0.clone();
        s[i] = -s[i];
        Self(s)
    }
}

/// Position `i` takes `s_minus[i]` when `σ_i = -1` and `s_plus[i]` otherwise.
pub fn mix(ss: &Supersample, sigma: &SignVector) -> Result<Vec<Vector>> {
    if sigma.len() != ss.n() {
        return Err(Error::DimensionMismatch {
            expected: ss.n(),
            got: sigma.len(),
        });
    }
    Ok(sigma
        .signs()
        .iter()
        .enumerate()
        .map(|(i, &s)| if s < 0 { ss.s_minus[i].clone() } else { ss.s_plus[i].clone() })
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", tag = "mode")]
pub enum ThetaMode {
    /// All `2^n` sign vectors.
    Exact,
    /// `m` random sign vectors, drawn with `sigma_seed`.
    Sampled { m: usize, sigma_seed: u64 },
}

/// A learner-output set together with how it was obtained.
#[derive(Debug, Clone, PartialEq)]
pub struct ThetaSet {
    pub cloud: PointCloud,
    /// Learner runs performed.
    pub runs: usize,
    /// True when only part of the sign vectors (or subsets) were used, so
    /// the cloud is an inner approximation.
    pub sampled: bool,
}

/// Runs `learner` on `S_σ` for the requested sign vectors, always with the
/// same `learner_seed`, and deduplicates the outputs in lexicographic σ
/// order.
pub fn build_theta_hat(
    learner: &dyn Learner,
    ss: &Supersample,
    mode: ThetaMode,
    learner_seed: u64,
    metric: Metric,
    tol: f64,
    exact_n_limit: usize,
) -> Result<ThetaSet> {
    let n = ss.n();
    let sigmas: Vec<u64> = match mode {
        ThetaMode::Exact => {
            if n > exact_n_limit || n > 62 {
                return Err(Error::LimitExceeded {
                    what: "exact Θ̂ⁿ enumeration",
                    limit_name: "exact_n_limit",
                    limit: exact_n_limit.min(62),
                    value: n,
                });
            }
            (0..1u64 << n).collect()
        }
        ThetaMode::Sampled { m, sigma_seed } => {
            if m == 0 {
                return invalid("sampled mode needs m >= 1");
            }
            if n > 62 {
                return Err(Error::LimitExceeded {
                    what: "sampled Θ̂ⁿ",
                    limit_name: "n",
                    limit: 62,
                    value: n,
                });
            }
            sample_sign_indices(n, m, sigma_seed)
        }
    };
    let mut outputs = Vec::with_capacity(sigmas.len());
    for &k in &sigmas {
        let sample = mix(ss, &SignVector::from_index(k, n))?;
        outputs.push(learner.fit(&sample, learner_seed)?);
    }
    Ok(ThetaSet {
        cloud: dedup(outputs, metric, tol)?,
        runs: sigmas.len(),
        sampled: !matches!(mode, ThetaMode::Exact),
    })
}

/// Sorted sign indices. Without replacement when `m <= 2^n / 2`, otherwise
/// with replacement (duplicates dropped).
fn sample_sign_indices(n: usize, m: usize, seed: u64) -> Vec<u64> {
    let total = 1u64 << n;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut set = BTreeSet::new();
    if (m as u64) <= total / 2 {
        while set.len() < m {
            set.insert(rng.random_range(0..total));
        }
    } else {
        for _ in 0..m {
            set.insert(rng.random_range(0..total));
        }
    }
    set.into_iter().collect()
}

fn combinations(total: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, total: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..=total - (k - cur.len()) {
            cur.push(i);
            rec(i + 1, total, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, total, k, &mut Vec::new(), &mut out);
    out
}

/// Largest `n` accepted by [`build_theta_bar`].
pub const THETA_BAR_N_LIMIT: usize = 6;

/// Learner outputs over every size-`n` subset of the interleaved supersample,
/// taken in index order. Contains Θ̂ⁿ.
pub fn build_theta_bar(
    learner: &dyn Learner,
    ss: &Supersample,
    learner_seed: u64,
    metric: Metric,
    tol: f64,
) -> Result<ThetaSet> {
    let n = ss.n();
    if n > THETA_BAR_N_LIMIT {
        return Err(Error::LimitExceeded {
            what: "Θ̄ⁿ subset enumeration",
            limit_name: "n",
            limit: THETA_BAR_N_LIMIT,
            value: n,
        });
    }
    let pool = ss.interleaved();
    let subsets = combinations(2 * n, n);
    let mut outputs = Vec::with_capacity(subsets.len());
    for s in &subsets {
        let sample: Vec<Vector> = s.iter().map(|&i| pool[i].clone()).collect();
        outputs.push(learner.fit(&sample, learner_seed)?);
    }
    Ok(ThetaSet {
        cloud: dedup(outputs, metric, tol)?,
        runs: subsets.len(),
        sampled: false,
    })
}
