//! Exact solvers for the independent domination number, the domination
//! number and the independence number.
//!
//! Independent dominating sets are exactly the maximal independent sets, so
//! [`gamma_i`] searches for a smallest maximal independent set: it repeatedly
//! takes the lowest undominated vertex `v` and branches on which vertex of
//! `N[v]` dominates it. Only undominated vertices can be added without
//! breaking independence, which keeps the tree small. All searches branch in
//! increasing vertex order and only replace the incumbent on a strict
//! improvement, so witnesses are reproducible.

use itertools::Itertools;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{low_mask, BitIter, Graph, VertexSet};

/// Search-node cap for a single solve. `max_nodes == 0` means unlimited.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Budget {
    pub max_nodes: u64,
}

impl Budget {
    pub const UNLIMITED: Budget = Budget { max_nodes: 0 };

    pub fn nodes(max_nodes: u64) -> Self {
        Budget { max_nodes }
    }

    fn exceeded(&self, nodes: u64) -> bool {
        self.max_nodes != 0 && nodes > self.max_nodes
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("node budget exceeded after {nodes} nodes (best known bound: {best:?})")]
    BudgetExceeded { nodes: u64, best: Option<usize> },
}

/// Optimal vertex set found by a solver.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdsResult {
    pub size: usize,
    pub witness: VertexSet,
    pub nodes_explored: u64,
}

struct IdsSearch<'a> {
    closed: &'a [u64],
    full: u64,
    budget: Budget,
    best: usize,
    best_set: u64,
    nodes: u64,
    collect: Option<(usize, Vec<u64>)>,
}

impl IdsSearch<'_> {
    fn go(&mut self, chosen: u64, size: usize, dominated: u64) -> Result<(), ()> {
        self.nodes += 1;
        if self.budget.exceeded(self.nodes) {
            return Err(());
        }
        let open = self.full & !dominated;
        if open == 0 {
            if let Some((limit, found)) = &mut self.collect {
                if found.len() < *limit && !found.contains(&chosen) {
                    found.push(chosen);
                }
            } else if size < self.best {
                self.best = size;
                self.best_set = chosen;
            }
            return Ok(());
        }
        // Every undominated vertex is still addable; each addition covers at
        // most `cover` of the open vertices.
        let cover = BitIter(open).map(|u| (self.closed[u] & open).count_ones()).max().unwrap_or(1) as usize;
        let need = (open.count_ones() as usize).div_ceil(cover);
        let bound = if self.collect.is_some() { self.best + 1 } else { self.best };
        if size + need >= bound {
            return Ok(());
        }
        let v = open.trailing_zeros() as usize;
        for u in BitIter(self.closed[v] & open) {
            self.go(chosen | 1u64 << u, size + 1, dominated | self.closed[u])?;
            if let Some((limit, found)) = &self.collect {
                if found.len() >= *limit {
                    break;
                }
            }
        }
        Ok(())
    }
}

fn closed_rows(rows: &[u64]) -> Vec<u64> {
    rows.iter().enumerate().map(|(v, r)| r | 1u64 << v).collect()
}

/// γ_i on raw adjacency rows; shared with the bondage search.
pub(crate) fn gamma_i_rows(rows: &[u64], budget: Budget) -> Result<IdsResult, SolveError> {
    let n = rows.len();
    let closed = closed_rows(rows);
    let mut s =
        IdsSearch { closed: &closed, full: low_mask(n), budget, best: n + 1, best_set: 0, nodes: 0, collect: None };
    let best_bound = |s: &IdsSearch| (s.best <= n).then_some(s.best);
    match s.go(0, 0, 0) {
        Ok(()) => Ok(IdsResult { size: s.best, witness: VertexSet::from_bits(s.best_set), nodes_explored: s.nodes }),
        Err(()) => Err(SolveError::BudgetExceeded { nodes: s.nodes, best: best_bound(&s) }),
    }
}

/// Exact independent domination number with a lexicographically-branching
/// witness.
pub fn gamma_i(g: &Graph, budget: Budget) -> Result<IdsResult, SolveError> {
    gamma_i_rows(g.rows(), budget)
}

/// Up to `limit` distinct minimum independent dominating sets, in search order.
pub fn minimum_ids_sets(g: &Graph, limit: usize, budget: Budget) -> Result<Vec<VertexSet>, SolveError> {
    let best = gamma_i(g, budget)?;
    let closed = closed_rows(g.rows());
    let mut s = IdsSearch {
        closed: &closed,
        full: low_mask(g.n()),
        budget,
        best: best.size,
        best_set: 0,
        nodes: 0,
        collect: Some((limit, Vec::new())),
    };
    s.go(0, 0, 0).map_err(|()| SolveError::BudgetExceeded { nodes: s.nodes, best: Some(best.size) })?;
    let found = s.collect.map(|(_, f)| f).unwrap_or_default();
    Ok(found.into_iter().map(VertexSet::from_bits).collect())
}

/// Reference γ_i: scans subsets by increasing size, lexicographically within
/// a size, and returns the first independent dominating one. Exponential in
/// `n`; intended for `n <= 16`.
pub fn gamma_i_oracle(g: &Graph) -> IdsResult {
    let n = g.n();
    let mut tested = 0u64;
    for k in 0..=n {
        for subset in (0..n).combinations(k) {
            tested += 1;
            let independent = subset.iter().tuple_combinations().all(|(&a, &b)| !g.has_edge(a, b));
            if !independent {
                continue;
            }
            let dominating = (0..n).all(|v| subset.contains(&v) || subset.iter().any(|&s| g.has_edge(s, v)));
            if dominating {
                return IdsResult { size: k, witness: subset.into_iter().collect(), nodes_explored: tested };
            }
        }
    }
    unreachable!("the full vertex set minus a maximal independent set always leaves one")
}

struct MisSearch<'a> {
    closed: &'a [u64],
    budget: Budget,
    best: usize,
    best_set: u64,
    nodes: u64,
}

impl MisSearch<'_> {
    fn go(&mut self, chosen: u64, size: usize, cand: u64) -> Result<(), ()> {
        self.nodes += 1;
        if self.budget.exceeded(self.nodes) {
            return Err(());
        }
        if cand == 0 {
            if size > self.best {
                self.best = size;
                self.best_set = chosen;
            }
            return Ok(());
        }
        if size + cand.count_ones() as usize <= self.best {
            return Ok(());
        }
        let v = cand.trailing_zeros() as usize;
        self.go(chosen | 1u64 << v, size + 1, cand & !self.closed[v])?;
        self.go(chosen, size, cand & !(1u64 << v))
    }
}

/// Exact independence number α.
pub fn independence_number(g: &Graph, budget: Budget) -> Result<IdsResult, SolveError> {
    let closed = closed_rows(g.rows());
    let mut s = MisSearch { closed: &closed, budget, best: 0, best_set: 0, nodes: 0 };
    // `best` starts at 0, so the first leaf always replaces it.
    if g.n() == 0 {
        return Ok(IdsResult { size: 0, witness: VertexSet::EMPTY, nodes_explored: 0 });
    }
    match s.go(0, 0, low_mask(g.n())) {
        Ok(()) => Ok(IdsResult { size: s.best, witness: VertexSet::from_bits(s.best_set), nodes_explored: s.nodes }),
        Err(()) => Err(SolveError::BudgetExceeded { nodes: s.nodes, best: (s.best > 0).then_some(s.best) }),
    }
}

struct DomSearch<'a> {
    closed: &'a [u64],
    full: u64,
    budget: Budget,
    best: usize,
    best_set: u64,
    nodes: u64,
}

impl DomSearch<'_> {
    fn go(&mut self, chosen: u64, size: usize, dominated: u64) -> Result<(), ()> {
        self.nodes += 1;
        if self.budget.exceeded(self.nodes) {
            return Err(());
        }
        let open = self.full & !dominated;
        if open == 0 {
            if size < self.best {
                self.best = size;
                self.best_set = chosen;
            }
            return Ok(());
        }
        let cover = self.closed.iter().map(|c| (c & open).count_ones()).max().unwrap_or(1) as usize;
        if size + (open.count_ones() as usize).div_ceil(cover) >= self.best {
            return Ok(());
        }
        // Undominated vertex with the fewest possible dominators.
        let v = BitIter(open).min_by_key(|&v| self.closed[v].count_ones()).expect("open is non-empty");
        for u in BitIter(self.closed[v]) {
            self.go(chosen | 1u64 << u, size + 1, dominated | self.closed[u])?;
        }
        Ok(())
    }
}

/// Exact domination number γ.
pub fn domination_number(g: &Graph, budget: Budget) -> Result<IdsResult, SolveError> {
    let closed = closed_rows(g.rows());
    let n = g.n();
    let mut s = DomSearch { closed: &closed, full: low_mask(n), budget, best: n + 1, best_set: 0, nodes: 0 };
    match s.go(0, 0, 0) {
        Ok(()) => Ok(IdsResult { size: s.best, witness: VertexSet::from_bits(s.best_set), nodes_explored: s.nodes }),
        Err(()) => Err(SolveError::BudgetExceeded { nodes: s.nodes, best: (s.best <= n).then_some(s.best) }),
    }
}
