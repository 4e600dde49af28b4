//! Minimum set cover over a small universe.
//!
//! Exact search is depth-first branch and bound on `u64` masks: branch on the
//! uncovered element with the fewest candidate sets, prune with
//! `depth + ceil(uncovered / best_gain) >= incumbent`. The greedy solution
//! seeds the incumbent. If the node budget runs out the incumbent is returned
//! with `exact = false`.

/// Default node budget for the exact search.
pub const DEFAULT_NODE_BUDGET: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetCoverSolution {
    /// Indices into the candidate list, ascending.
    pub chosen: Vec<usize>,
    pub exact: bool,
}

/// Greedy cover: repeatedly take the set covering the most uncovered
/// elements, ties to the lowest smallest element, then lowest index.
/// Returns `None` when the sets do not cover `0..universe`.
pub fn greedy(sets: &[Vec<usize>], universe: usize) -> Option<Vec<usize>> {
    let mut covered = vec![false; universe];
    let mut remaining = universe;
    let mut chosen = Vec::new();
    while remaining > 0 {
        let mut best: Option<(usize, usize, usize)> = None; // (gain, min element, idx)
        for (idx, s) in sets.iter().enumerate() {
            let gain = s.iter().filter(|&&e| !covered[e]).count();
            if gain == 0 {
                continue;
            }
            let lo = s.iter().copied().min().unwrap_or(usize::MAX);
            let better = match best {
                None => true,
                Some((g, l, _)) => gain > g || (gain == g && lo < l),
            };
            if better {
                best = Some((gain, lo, idx));
            }
        }
        let (_, _, idx) = best?;
        for &e in &sets[idx] {
            if !covered[e] {
                covered[e] = true;
                remaining -= 1;
            }
        }
        chosen.push(idx);
    }
    chosen.sort_unstable();
    Some(chosen)
}

struct Search<'a> {
    masks: &'a [u64],
    containing: Vec<Vec<usize>>,
    best: Vec<usize>,
    stack: Vec<usize>,
    nodes: u64,
    budget: u64,
    exhausted: bool,
}

impl Search<'_> {
    fn run(&mut self, covered: u64, full: u64) {
        if self.exhausted {
            return;
        }
        self.nodes += 1;
        if self.nodes > self.budget {
            self.exhausted = true;
            return;
        }
        let uncovered = full & !covered;
        if uncovered == 0 {
            if self.stack.len() < self.best.len() {
                self.best = self.stack.clone();
            }
            return;
        }
        let gain = self
            .masks
            .iter()
            .map(|m| (m & uncovered).count_ones())
            .max()
            .unwrap_or(0);
        if gain == 0 {
            return;
        }
        let lower = uncovered.count_ones().div_ceil(gain) as usize;
        if self.stack.len() + lower >= self.best.len() {
            return;
        }
        // most constrained uncovered element
        let mut pivot = usize::MAX;
        let mut fewest = usize::MAX;
        let mut bits = uncovered;
        while bits != 0 {
            let e = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            let k = self.containing[e].len();
            if k < fewest {
                fewest = k;
                pivot = e;
            }
        }
        let mut options = self.containing[pivot].clone();
        options.sort_by_key(|&i| (std::cmp::Reverse((self.masks[i] & uncovered).count_ones()), i));
        for i in options {
            self.stack.push(i);
            self.run(covered | self.masks[i], full);
            self.stack.pop();
            if self.exhausted {
                return;
            }
        }
    }
}

/// Exact minimum cover of `0..universe` (at most 64 elements).
///
/// Returns `None` when the candidates do not cover the universe.
pub fn exact(sets: &[Vec<usize>], universe: usize, node_budget: u64) -> Option<SetCoverSolution> {
    assert!(universe <= 64, "exact set cover supports at most 64 elements");
    let seed = greedy(sets, universe)?;
    if universe == 0 {
        return Some(SetCoverSolution {
            chosen: vec![],
            exact: true,
        });
    }
    let masks: Vec<u64> = sets
        .iter()
        .map(|s| s.iter().fold(0u64, |m, &e| m | (1u64 << e)))
        .collect();
    let full = if universe == 64 {
        u64::MAX
    } else {
        (1u64 << universe) - 1
    };
    let mut containing = vec![Vec::new(); universe];
    for (i, m) in masks.iter().enumerate() {
        let mut bits = *m & full;
        while bits != 0 {
            let e = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            containing[e].push(i);
        }
    }
    let mut search = Search {
        masks: &masks,
        containing,
        best: seed,
        stack: Vec::new(),
        nodes: 0,
        budget: node_budget,
        exhausted: false,
    };
    search.run(0, full);
    let mut chosen = search.best;
    chosen.sort_unstable();
    Some(SetCoverSolution {
        chosen,
        exact: !search.exhausted,
    })
}
