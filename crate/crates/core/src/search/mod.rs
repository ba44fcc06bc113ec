//! Search machinery: numerical multipliers, intersection-number solving, the
//! orbit-sign DFS, and the power-residue scan.

mod intersection;
mod multiplier;
mod orbit;
mod scan;

pub use intersection::{intersection_solutions, IntersectionSolution};
pub use multiplier::{numerical_multipliers, MultiplierOutcome, MultiplierResult};
pub use orbit::{exhaustive_element_search, orbit_search};
pub use scan::{residue_scan, ResidueHit};

use std::time::Duration;

use crate::group::{AbelianGroup, GroupElement};
use crate::sds::{SdsParams, SignedDiffSet};

/// Knobs for the DFS searches.
#[derive(Debug, Clone)]
pub struct SearchOptions {
    /// Node budget; exceeding it yields a partial report with a frontier.
    pub max_nodes: Option<u64>,
    /// Wall-clock budget, checked periodically.
    pub time_limit: Option<Duration>,
    /// Worker threads; 1 means fully sequential. With a node budget, each
    /// top-level branch gets an equal share so the outcome is schedule
    /// independent.
    pub threads: usize,
    /// Quotient (intersection-number) pruning.
    pub prune_quotient: bool,
    /// Incremental difference-count pruning.
    pub prune_diff: bool,
    /// Kernel generators for quotient pruning; defaults to one generator per
    /// maximal proper cyclic subgroup.
    pub quotient_generators: Option<Vec<GroupElement>>,
    /// Use this multiplier instead of deriving one; 1 forces a plain
    /// per-element search.
    pub force_multiplier: Option<i64>,
    /// Largest group order [`exhaustive_element_search`] accepts.
    pub element_ceiling: u64,
    /// Restart from a previously reported frontier instead of the root.
    pub resume_prefixes: Option<Vec<Vec<i8>>>,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self {
            max_nodes: None,
            time_limit: None,
            threads: 1,
            prune_quotient: true,
            prune_diff: true,
            quotient_generators: None,
            force_multiplier: None,
            element_ceiling: 25,
            resume_prefixes: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchStatus {
    /// The sign space was fully explored.
    Exhaustive,
    /// A budget ran out; `frontier` holds the unexplored DFS prefixes.
    Partial,
    /// The parameters fail the counting identity or are an excluded trivial
    /// shape.
    Infeasible,
}

impl std::fmt::Display for SearchStatus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            SearchStatus::Exhaustive => "exhaustive",
            SearchStatus::Partial => "partial",
            SearchStatus::Infeasible => "infeasible",
        };
        f.write_str(s)
    }
}

/// Outcome of a search run. Every member of `sets_found` passes
/// verification; sets are canonical-form representatives, deduplicated and
/// sorted by their keys, so reports are deterministic.
#[derive(Debug, Clone)]
pub struct SearchReport {
    pub params: Option<SdsParams>,
    pub group: AbelianGroup,
    pub sets_found: Vec<SignedDiffSet>,
    pub nodes_explored: u64,
    pub status: SearchStatus,
    /// The multiplier whose orbits were searched (1 = per-element).
    pub multiplier_used: i64,
    /// What the search space covered, stated explicitly.
    pub scope_note: String,
    pub infeasible_reason: Option<String>,
    /// Unexplored DFS prefixes when the status is partial; feed back through
    /// [`SearchOptions::resume_prefixes`] to continue.
    pub frontier: Vec<Vec<i8>>,
}

impl SearchReport {
    pub(crate) fn infeasible(group: AbelianGroup, reason: String) -> Self {
        Self {
            params: None,
            group,
            sets_found: Vec::new(),
            nodes_explored: 0,
            status: SearchStatus::Infeasible,
            multiplier_used: 1,
            scope_note: String::new(),
            infeasible_reason: Some(reason),
            frontier: Vec::new(),
        }
    }

    pub fn found_any(&self) -> bool {
        !self.sets_found.is_empty()
    }
}
