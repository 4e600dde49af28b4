use serde::{Deserialize, Serialize};

use crate::fractal::setcover::DEFAULT_NODE_BUDGET;

/// Size limits for the exponential exact solvers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SolverLimits {
    /// Largest `n` for exhaustive sign enumeration (Rademacher and Θ̂ⁿ).
    pub exact_n_limit: usize,
    /// Largest point count solved exactly by branch and bound (at most 64).
    pub exact_limit: usize,
    /// Largest point count accepted by the 2-cover enumeration oracle.
    pub oracle_limit: usize,
    /// Node budget for a single branch-and-bound search.
    pub node_budget: u64,
}

impl Default for SolverLimits {
    fn default() -> Self {
        Self {
            exact_n_limit: 20,
            exact_limit: 20,
            oracle_limit: 8,
            node_budget: DEFAULT_NODE_BUDGET,
        }
    }
}
