use serde::Serialize;

use super::setcover;
use crate::error::{invalid, Result};
use crate::limits::SolverLimits;
use crate::metric::{covering_diameter, DistanceMatrix, PointCloud};

/// A family of index subsets, each of size at least two, whose union is
/// `0..n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TwoCover {
    sets: Vec<Vec<usize>>,
}

impl TwoCover {
    pub fn new(mut sets: Vec<Vec<usize>>, n: usize) -> Result<Self> {
        let mut seen = vec![false; n];
        for s in &mut sets {
            s.sort_unstable();
            s.dedup();
            if s.len() < 2 {
                return invalid("every member of a 2-cover needs at least two points");
            }
            for &e in s.iter() {
                if e >= n {
                    return invalid(format!("index {e} out of range for {n} points"));
                }
                seen[e] = true;
            }
        }
        if let Some(missing) = seen.iter().position(|&s| !s) {
            return invalid(format!("point {missing} is not covered"));
        }
        sets.sort();
        Ok(Self { sets })
    }

    pub fn sets(&self) -> &[Vec<usize>] {
        &self.sets
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    /// Largest member diameter.
    pub fn diameter(&self, c: &PointCloud) -> f64 {
        self.sets
            .iter()
            .map(|s| subset_diameter(c, s))
            .fold(0.0, f64::max)
    }
}

pub(crate) fn subset_diameter(c: &PointCloud, s: &[usize]) -> f64 {
    let mut best = 0.0f64;
    for (k, &i) in s.iter().enumerate() {
        for &j in &s[..k] {
            best = best.max(c.dist(i, j));
        }
    }
    best
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TwoCoverResult {
    /// Covering cardinality `T_a(C)` (an upper bound when not exact).
    pub t: usize,
    pub cover: TwoCover,
    pub exact: bool,
}

/// Smallest 2-cover of `c` whose members all have diameter at most `a`.
///
/// Admissible members are cliques of the graph joining points at distance
/// `<= a`, so only maximal cliques are needed. One-dimensional clouds use an
/// exact sweep; otherwise clouds up to `limits.exact_limit` points run branch
/// and bound over the maximal cliques, and larger clouds fall back to greedy
/// over one nearest-first clique per seed point.
pub fn min_two_cover(c: &PointCloud, a: f64, limits: &SolverLimits) -> Result<TwoCoverResult> {
    let nabla = covering_diameter(c)?;
    if !(a >= nabla) {
        return invalid(format!(
            "no 2-cover with member diameter <= {a}: covering diameter is {nabla}"
        ));
    }
    let n = c.len();
    if c.dim() == 1 {
        let sets = sweep_1d(c, a);
        let t = sets.len();
        return Ok(TwoCoverResult {
            t,
            cover: TwoCover::new(sets, n)?,
            exact: true,
        });
    }
    let d = c.distance_matrix();
    let (sets, exact) = if n <= limits.exact_limit.min(64) {
        let cliques = maximal_cliques(&d, a);
        let sol = setcover::exact(&cliques, n, limits.node_budget).expect("a >= nabla");
        (sol.chosen.into_iter().map(|i| cliques[i].clone()).collect::<Vec<_>>(), sol.exact)
    } else {
        let cand = seeded_cliques(&d, a);
        let chosen = setcover::greedy(&cand, n).expect("a >= nabla");
        (chosen.into_iter().map(|i| cand[i].clone()).collect(), false)
    };
    Ok(TwoCoverResult {
        t: sets.len(),
        cover: TwoCover::new(sets, n)?,
        exact,
    })
}

fn sweep_1d(c: &PointCloud, a: f64) -> Vec<Vec<usize>> {
    let mut order: Vec<usize> = (0..c.len()).collect();
    order.sort_by(|&x, &y| c.point(x).coords()[0].total_cmp(&c.point(y).coords()[0]));
    let mut sets = Vec::new();
    let mut i = 0;
    while i < order.len() {
        let mut j = i;
        while j + 1 < order.len() && c.dist(order[i], order[j + 1]) <= a {
            j += 1;
        }
        if j > i {
            sets.push(order[i..=j].to_vec());
            i = j + 1;
        } else {
            // nothing to the right within reach; a >= nabla guarantees the left
            // neighbour is
            sets.push(vec![order[i - 1], order[i]]);
            i += 1;
        }
    }
    sets
}

/// Bron–Kerbosch with pivoting on `u64` vertex masks.
fn maximal_cliques(d: &DistanceMatrix, a: f64) -> Vec<Vec<usize>> {
    let n = d.len();
    let adj: Vec<u64> = (0..n)
        .map(|i| {
            (0..n)
                .filter(|&j| j != i && d.get(i, j) <= a)
                .fold(0u64, |m, j| m | (1 << j))
        })
        .collect();
    let mut out = Vec::new();
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    bron_kerbosch(&adj, 0, all, 0, &mut out);
    let mut sets: Vec<Vec<usize>> = out
        .into_iter()
        .filter(|m| m.count_ones() >= 2)
        .map(|m| (0..n).filter(|&i| m >> i & 1 == 1).collect())
        .collect();
    sets.sort();
    sets
}

fn bron_kerbosch(adj: &[u64], r: u64, mut p: u64, mut x: u64, out: &mut Vec<u64>) {
    if p == 0 && x == 0 {
        out.push(r);
        return;
    }
    let px = p | x;
    let pivot = {
        let mut best = 0usize;
        let mut best_deg = 0u32;
        let mut bits = px;
        while bits != 0 {
            let u = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            let deg = (adj[u] & p).count_ones();
            if deg >= best_deg {
                best_deg = deg;
                best = u;
            }
        }
        best
    };
    let mut cand = p & !adj[pivot];
    while cand != 0 {
        let v = cand.trailing_zeros() as usize;
        cand &= cand - 1;
        bron_kerbosch(adj, r | (1 << v), p & adj[v], x & adj[v], out);
        p &= !(1 << v);
        x |= 1 << v;
    }
}

/// For every seed, grow a clique by adding points nearest-first.
fn seeded_cliques(d: &DistanceMatrix, a: f64) -> Vec<Vec<usize>> {
    let n = d.len();
    let mut out: Vec<Vec<usize>> = Vec::with_capacity(n);
    for seed in 0..n {
        let mut order: Vec<usize> = (0..n).filter(|&j| j != seed && d.get(seed, j) <= a).collect();
        order.sort_by(|&x, &y| d.get(seed, x).total_cmp(&d.get(seed, y)).then(x.cmp(&y)));
        let mut clique = vec![seed];
        for j in order {
            if clique.iter().all(|&m| d.get(m, j) <= a) {
                clique.push(j);
            }
        }
        clique.sort_unstable();
        out.push(clique);
    }
    out.sort();
    out.dedup();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metric::{Metric, Vector};

    fn cloud(xs: &[f64]) -> PointCloud {
        PointCloud::from_scalars(xs, Metric::Linf).unwrap()
    }

    /// Minimum 2-cover by trying families of admissible subsets of growing
    /// size. Only usable for tiny clouds.
    fn brute_t(c: &PointCloud, a: f64) -> usize {
        let n = c.len();
        let admissible: Vec<u32> = (1u32..(1 << n))
            .filter(|m| m.count_ones() >= 2)
            .filter(|&m| {
                let idx: Vec<usize> = (0..n).filter(|&i| m >> i & 1 == 1).collect();
                subset_diameter(c, &idx) <= a
            })
            .collect();
        let full = (1u32 << n) - 1;
        for k in 1..=n {
            if covers_with(&admissible, full, 0, k, 0) {
                return k;
            }
        }
        unreachable!()
    }

    fn covers_with(sets: &[u32], full: u32, acc: u32, k: usize, start: usize) -> bool {
        if acc == full {
            return true;
        }
        if k == 0 {
            return false;
        }
        (start..sets.len()).any(|i| covers_with(sets, full, acc | sets[i], k - 1, i + 1))
    }

    #[test]
    fn hand_cases() {
        let lim = SolverLimits::default();
        let r = min_two_cover(&cloud(&[0.0, 1.0, 2.0, 3.0]), 1.0, &lim).unwrap();
        assert_eq!(r.t, 2);
        assert_eq!(r.cover.sets(), &[vec![0, 1], vec![2, 3]]);

        let r = min_two_cover(&cloud(&[0.0, 1.0, 2.0]), 1.0, &lim).unwrap();
        assert_eq!(r.t, 2);
        assert_eq!(r.cover.sets(), &[vec![0, 1], vec![1, 2]]);

        let r = min_two_cover(&cloud(&[0.0, 1.0, 2.0, 3.0]), 3.0, &lim).unwrap();
        assert_eq!(r.t, 1);
        assert_eq!(r.cover.sets(), &[vec![0, 1, 2, 3]]);
    }

    #[test]
    fn rejects_radius_below_covering_diameter() {
        let lim = SolverLimits::default();
        assert!(min_two_cover(&cloud(&[0.0, 1.0, 10.0]), 1.0, &lim).is_err());
        assert!(min_two_cover(&cloud(&[0.0]), 1.0, &lim).is_err());
    }

    #[test]
    fn two_cover_validation() {
        assert!(TwoCover::new(vec![vec![0]], 1).is_err());
        assert!(TwoCover::new(vec![vec![0, 1]], 3).is_err());
        assert!(TwoCover::new(vec![vec![0, 1], vec![1, 2]], 3).is_ok());
    }

    #[test]
    fn exact_paths_match_brute_force() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        let lim = SolverLimits::default();
        for _ in 0..200 {
            let n = rng.random_range(2..9);
            let dim = rng.random_range(1..4);
            let pts: Vec<Vector> = (0..n)
                .map(|_| Vector::new((0..dim).map(|_| rng.random::<f64>()).collect()).unwrap())
                .collect();
            let metric = if rng.random_bool(0.5) { Metric::Linf } else { Metric::L2 };
            let c = crate::metric::dedup(pts, metric, 0.0).unwrap();
            if c.len() < 2 {
                continue;
            }
            let nabla = covering_diameter(&c).unwrap();
            let a = nabla + rng.random_range(0.0..0.3);
            let r = min_two_cover(&c, a, &lim).unwrap();
            assert!(r.exact);
            assert_eq!(r.t, brute_t(&c, a));
            assert!(r.cover.diameter(&c) <= a);
        }
    }

    #[test]
    fn greedy_fallback_is_valid() {
        let pts: Vec<Vector> = (0..40)
            .map(|i| Vector::new(vec![(i % 8) as f64, (i / 8) as f64]).unwrap())
            .collect();
        let c = PointCloud::new(pts, Metric::L2, 0.0).unwrap();
        let r = min_two_cover(&c, 1.0, &SolverLimits::default()).unwrap();
        assert!(!r.exact);
        assert!(r.cover.diameter(&c) <= 1.0);
        assert!(r.t <= 40);
    }
}
