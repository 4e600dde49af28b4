//! Finite point sets with an attached metric.
//!
//! Everything downstream (covering numbers, 2-covers, dimensions, the
//! parameter sets produced by learners) is built on [`PointCloud`]. All
//! geometry is brute force over the full distance matrix, which is fine for
//! clouds of a few thousand points.

use std::fmt;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

/// A point in `R^k` with finite coordinates.
#[derive(Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct Vector(Vec<f64>);

impl Vector {
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.is_empty() {
            return invalid("vector must have at least one coordinate");
        }
        if let Some(bad) = coords.iter().find(|c| !c.is_finite()) {
            return invalid(format!("non-finite coordinate {bad}"));
        }
        Ok(Self(coords))
    }

    /// One-dimensional point. Panics on a non-finite value.
    pub fn scalar(x: f64) -> Self {
        Self::new(vec![x]).expect("finite scalar")
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[f64] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }

    /// Applies `f` coordinatewise. The caller guarantees finite results.
    pub(crate) fn map(&self, f: impl Fn(usize, f64) -> f64) -> Self {
        Self(self.0.iter().enumerate().map(|(j, &c)| f(j, c)).collect())
    }

    pub(crate) fn from_raw(coords: Vec<f64>) -> Self {
        debug_assert!(!coords.is_empty() && coords.iter().all(|c| c.is_finite()));
        Self(coords)
    }
}

impl TryFrom<Vec<f64>> for Vector {
    type Error = Error;
    fn try_from(v: Vec<f64>) -> Result<Self> {
        Self::new(v)
    }
}

impl From<Vector> for Vec<f64> {
    fn from(v: Vector) -> Self {
        v.0
    }
}

impl fmt::Debug for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.0).finish()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Metric {
    /// Max-coordinate distance; box covers.
    #[default]
    Linf,
    L2,
}

impl Metric {
    pub fn distance(self, p: &Vector, q: &Vector) -> Result<f64> {
        if p.dim() != q.dim() {
            return Err(Error::DimensionMismatch {
                expected: p.dim(),
                got: q.dim(),
            });
        }
        Ok(self.distance_unchecked(p.coords(), q.coords()))
    }

    pub(crate) fn distance_unchecked(self, p: &[f64], q: &[f64]) -> f64 {
        match self {
            Metric::Linf => p
                .iter()
                .zip(q)
                .map(|(a, b)| (a - b).abs())
                .fold(0.0, f64::max),
            Metric::L2 => p
                .iter()
                .zip(q)
                .map(|(a, b)| (a - b) * (a - b))
                .sum::<f64>()
                .sqrt(),
        }
    }
}

impl std::str::FromStr for Metric {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "linf" => Ok(Metric::Linf),
            "l2" => Ok(Metric::L2),
            other => invalid(format!("unknown metric `{other}` (expected linf or l2)")),
        }
    }
}

pub fn distance(p: &Vector, q: &Vector, m: Metric) -> Result<f64> {
    m.distance(p, q)
}

/// A nonempty finite set of same-dimension points whose pairwise distances
/// all exceed `dedup_tol`.
#[derive(Debug, Clone, PartialEq)]
pub struct PointCloud {
    points: Vec<Vector>,
    metric: Metric,
    dedup_tol: f64,
}

impl PointCloud {
    /// Validates the cloud invariant and rejects sets containing points
    /// closer than `dedup_tol`. Use [`dedup`] to collapse them instead.
    pub fn new(points: Vec<Vector>, metric: Metric, dedup_tol: f64) -> Result<Self> {
        check_points(&points, dedup_tol)?;
        for i in 0..points.len() {
            for j in 0..i {
                let d = metric.distance_unchecked(points[i].coords(), points[j].coords());
                if d <= dedup_tol {
                    return invalid(format!(
                        "points {j} and {i} are within dedup_tol ({d} <= {dedup_tol})"
                    ));
                }
            }
        }
        Ok(Self {
            points,
            metric,
            dedup_tol,
        })
    }

    /// Builds a cloud from scalars, for one-dimensional sets.
    pub fn from_scalars(xs: &[f64], metric: Metric) -> Result<Self> {
        Self::new(xs.iter().map(|&x| Vector::new(vec![x])).collect::<Result<_>>()?, metric, 0.0)
    }

    pub fn points(&self) -> &[Vector] {
        &self.points
    }

    pub fn point(&self, i: usize) -> &Vector {
        &self.points[i]
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn metric(&self) -> Metric {
        self.metric
    }

    pub fn dedup_tol(&self) -> f64 {
        self.dedup_tol
    }

    pub fn dim(&self) -> usize {
        self.points[0].dim()
    }

    pub fn dist(&self, i: usize, j: usize) -> f64 {
        self.metric
            .distance_unchecked(self.points[i].coords(), self.points[j].coords())
    }

    pub fn distance_matrix(&self) -> DistanceMatrix {
        DistanceMatrix::new(self)
    }

    /// Whether some stored point lies within `tol` of `p`.
    pub fn contains_within(&self, p: &Vector, tol: f64) -> bool {
        self.points
            .iter()
            .any(|q| self.metric.distance_unchecked(p.coords(), q.coords()) <= tol)
    }

    /// Union with extra points (deduplicated against the current set).
    pub fn union(&self, extra: &[Vector]) -> Result<PointCloud> {
        let mut all = self.points.clone();
        all.extend_from_slice(extra);
        dedup(all, self.metric, self.dedup_tol)
    }

    /// Applies `x -> scale * x + shift` to every point.
    pub fn similarity(&self, scale: f64, shift: &[f64]) -> Result<PointCloud> {
        if scale <= 0.0 {
            return invalid("similarity scale must be positive");
        }
        if shift.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: shift.len(),
            });
        }
        let points = self
            .points
            .iter()
            .map(|p| Vector::new(p.coords().iter().zip(shift).map(|(c, s)| scale * c + s).collect()))
            .collect::<Result<Vec<_>>>()?;
        Ok(PointCloud {
            points,
            metric: self.metric,
            dedup_tol: self.dedup_tol * scale,
        })
    }
}

fn check_points(points: &[Vector], tol: f64) -> Result<()> {
    if points.is_empty() {
        return invalid("point cloud must be nonempty");
    }
    if !(tol >= 0.0 && tol.is_finite()) {
        return invalid(format!("dedup_tol must be a finite nonnegative number, got {tol}"));
    }
    let k = points[0].dim();
    if let Some(p) = points.iter().find(|p| p.dim() != k) {
        return Err(Error::DimensionMismatch {
            expected: k,
            got: p.dim(),
        });
    }
    Ok(())
}

/// Greedy pass in input order: a point is kept iff it is farther than `tol`
/// from every point kept so far.
pub fn dedup(points: Vec<Vector>, metric: Metric, tol: f64) -> Result<PointCloud> {
    check_points(&points, tol)?;
    let mut kept: Vec<Vector> = Vec::with_capacity(points.len());
    for p in points {
        let close = kept
            .iter()
            .any(|q| metric.distance_unchecked(p.coords(), q.coords()) <= tol);
        if !close {
            kept.push(p);
        }
    }
    Ok(PointCloud {
        points: kept,
        metric,
        dedup_tol: tol,
    })
}

/// Dense symmetric distance matrix.
#[derive(Debug, Clone)]
pub struct DistanceMatrix {
    n: usize,
    d: Vec<f64>,
}

impl DistanceMatrix {
    pub fn new(c: &PointCloud) -> Self {
        let n = c.len();
        let mut d = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..i {
                let v = c.dist(i, j);
                d[i * n + j] = v;
                d[j * n + i] = v;
            }
        }
        Self { n, d }
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.d[i * self.n + j]
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// Distinct positive entries, ascending.
    pub fn distinct_distances(&self) -> Vec<f64> {
        let mut v: Vec<f64> = (0..self.n)
            .flat_map(|i| (0..i).map(move |j| (i, j)))
            .map(|(i, j)| self.get(i, j))
            .collect();
        v.sort_by(f64::total_cmp);
        v.dedup();
        v
    }
}

/// Largest pairwise distance; zero for a singleton.
pub fn diameter(c: &PointCloud) -> f64 {
    let mut best = 0.0f64;
    for i in 0..c.len() {
        for j in 0..i {
            best = best.max(c.dist(i, j));
        }
    }
    best
}

/// Nearest-neighbour distance of every point, in point order.
pub fn nn_distances(c: &PointCloud) -> Result<Vec<f64>> {
    if c.len() < 2 {
        return invalid("nearest-neighbour distances need at least two points");
    }
    let n = c.len();
    let mut nu = vec![f64::INFINITY; n];
    for i in 0..n {
        for j in 0..i {
            let d = c.dist(i, j);
            nu[i] = nu[i].min(d);
            nu[j] = nu[j].min(d);
        }
    }
    Ok(nu)
}

/// Largest nearest-neighbour distance.
pub fn covering_diameter(c: &PointCloud) -> Result<f64> {
    Ok(nn_distances(c)?.into_iter().fold(0.0, f64::max))
}

/// Default focality tolerance: `1e-9 * diameter`.
pub fn default_focal_tol(c: &PointCloud) -> f64 {
    1e-9 * diameter(c)
}

/// True iff the covering diameter reaches the diameter within `tol`.
pub fn is_focal(c: &PointCloud, tol: f64) -> Result<bool> {
    let nabla = covering_diameter(c)?;
    Ok(nabla >= diameter(c) - tol)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct CloudHeader {
    metric: Metric,
    dedup_tol: f64,
}

/// Path of the JSON header that accompanies a cloud CSV (`x.csv` -> `x.json`).
pub fn sidecar_path(csv_path: &Path) -> PathBuf {
    csv_path.with_extension("json")
}

/// Writes `c` as CSV (`c0..c{k-1}` header) plus its JSON sidecar.
pub fn write_cloud_csv(c: &PointCloud, path: &Path) -> Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    w.write_record((0..c.dim()).map(|j| format!("c{j}")))?;
    for p in c.points() {
        w.write_record(p.coords().iter().map(|x| format!("{x:?}")))?;
    }
    w.flush()?;
    let header = CloudHeader {
        metric: c.metric(),
        dedup_tol: c.dedup_tol(),
    };
    std::fs::write(sidecar_path(path), serde_json::to_string(&header)?)?;
    Ok(())
}

/// Reads the raw rows of a point CSV. The header row must be `c0..c{k-1}`.
pub fn read_points_csv(path: &Path) -> Result<Vec<Vector>> {
    let mut r = csv::Reader::from_path(path)?;
    let headers = r.headers()?.clone();
    for (j, h) in headers.iter().enumerate() {
        if h.trim() != format!("c{j}") {
            return invalid(format!("column {j} must be named c{j}, found `{h}`"));
        }
    }
    let mut points = Vec::new();
    for (row, rec) in r.records().enumerate() {
        let rec = rec?;
        let coords = rec
            .iter()
            .map(|s| {
                s.trim()
                    .parse::<f64>()
                    .map_err(|e| Error::InvalidInput(format!("row {row}: `{s}`: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        points.push(Vector::new(coords)?);
    }
    Ok(points)
}

/// Reads a cloud CSV. The sidecar header is optional; when absent (or when
/// `metric` is given) the supplied metric / LINF default is used. Rows are
/// deduplicated with the header tolerance.
pub fn read_cloud_csv(path: &Path, metric: Option<Metric>) -> Result<PointCloud> {
    let points = read_points_csv(path)?;
    let side = sidecar_path(path);
    let header = if side.exists() {
        serde_json::from_str::<CloudHeader>(&std::fs::read_to_string(side)?)?
    } else {
        CloudHeader {
            metric: Metric::default(),
            dedup_tol: 0.0,
        }
    };
    dedup(points, metric.unwrap_or(header.metric), header.dedup_tol)
}
