//! Sequential dynamical systems (SDS) over binary states, their phase spaces,
//! and the combinatorics of their period-2 orbits.
//!
//! The crate is organized around one chain of equalities that can be checked
//! computationally from several independent directions:
//!
//! * [`sds`] — graphs, vertex functions, sequential updates, SDS maps, and
//!   exhaustive phase-space enumeration with a cycle census.
//! * [`word_graphs`] — subsequence containment over `F_2` words and the
//!   pattern graphs `HatH(n)`, `H(m)`, `J(m)` whose edges are pairs of vectors
//!   whose sum contains `101` (resp. `111`), together with the linear
//!   isomorphisms relating them.
//! * [`clique`] — exact branch-and-bound maximum-clique search on the
//!   materialized pattern graphs.
//! * [`coding`] — Hamming distance, minimum distance, Hamming codes, and the
//!   correspondence between distance-3 codes and cliques of `J(n)`.
//! * [`construction`] — the clique-to-update-function construction, the
//!   brute-force maximum 2-cycle count, and the end-to-end verifier that
//!   cross-checks all routes against each other.

pub mod clique;
pub mod coding;
pub mod construction;
pub mod error;
pub mod sds;
pub mod word;
pub mod word_graphs;

pub use error::{Error, Result};
pub use word::BinaryWord;

/// Default dimension cap for full phase-space enumeration (2^n states).
pub const PHASE_SPACE_DIM_CAP: usize = 24;
/// Default dimension cap for materializing a pattern graph (2^dim vertices).
pub const MATERIALIZE_DIM_CAP: usize = 16;
/// Default cap for the exhaustive scan over all 2^(2^n) update functions.
pub const BRUTE_ETA_DIM_CAP: usize = 4;

/// Resource limits shared by the enumeration- and search-heavy operations.
///
/// The dimension caps above bound memory (2^n states, 2^dim vertices) and are
/// only lifted by `force`. Node and time limits bound the clique search; a
/// search that runs out of budget returns its incumbent flagged non-optimal,
/// never a wrong answer.
#[derive(Debug, Clone, Copy, Default)]
pub struct Budget {
    /// Maximum branch-and-bound nodes for clique search.
    pub max_nodes: Option<u64>,
    /// Wall-clock limit in seconds for clique search.
    pub max_secs: Option<f64>,
    /// Lift the default dimension caps.
    pub force: bool,
}

impl Budget {
    pub fn unlimited() -> Self {
        Budget::default()
    }

    pub fn with_force(mut self, force: bool) -> Self {
        self.force = force;
        self
    }

    pub fn with_max_nodes(mut self, nodes: u64) -> Self {
        self.max_nodes = Some(nodes);
        self
    }

    pub fn with_max_secs(mut self, secs: f64) -> Self {
        self.max_secs = Some(secs);
        self
    }

    /// Checks a dimension against a default cap, honoring `force`.
    pub(crate) fn check_dim(&self, what: &'static str, dim: usize, cap: usize) -> Result<()> {
        if dim > cap && !self.force {
            return Err(Error::BudgetExceeded {
                what,
                detail: format!("dimension {dim} exceeds default cap {cap} (pass force to override)"),
            });
        }
        Ok(())
    }
}
