//! Independent domination bondage number: the fewest edges whose removal
//! changes γ_i, in either direction.
//!
//! Candidate edge sets are scanned by size and then lexicographically over
//! the sorted edge list. The first hit is the certificate, so the result is
//! the same whether the scan runs on one thread or many.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{low_mask, Edge, EdgeSet, Graph, GraphError};
use crate::solvers::{domination_number, gamma_i, gamma_i_oracle, gamma_i_rows, minimum_ids_sets, Budget, SolveError};

/// Cached minimum independent dominating sets kept by the pruning cache.
pub const CACHE_SETS: usize = 32;

/// Graphs up to this order are re-checked with the enumeration oracle.
pub const ORACLE_MAX_N: usize = 16;

const CHUNK: u64 = 2048;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BondageError {
    #[error("graph has no edges, so no edge removal can change gamma_i")]
    NoEdges,
    #[error("node budget exceeded; every edge set of size <= {verified_k} was checked")]
    BudgetExceeded { verified_k: usize },
    #[error("edge {0} is not present in the graph")]
    MissingEdge(Edge),
}

impl From<GraphError> for BondageError {
    fn from(e: GraphError) -> Self {
        match e {
            GraphError::MissingEdge(e) => BondageError::MissingEdge(e),
            other => unreachable!("edge removal only fails on missing edges: {other}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Increased,
    Decreased,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BondageCertificate {
    pub k: usize,
    pub removed: EdgeSet,
    pub gamma_before: usize,
    pub gamma_after: usize,
    /// Edge sets the serial scan examines up to and including `removed`.
    pub subsets_tested: u64,
    pub direction: Direction,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct BondageOptions {
    /// Applies to every γ_i solve separately.
    pub budget: Budget,
    /// Split each size class across the current rayon pool.
    pub parallel: bool,
    /// Skip edge sets on which a cached minimum i-set provably survives.
    pub use_cache: bool,
}

/// `b_id(g)` with the serial scan and no cache.
pub fn bondage_id(g: &Graph, budget: Budget) -> Result<BondageCertificate, BondageError> {
    bondage_id_with(g, &BondageOptions { budget, ..Default::default() })
}

fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    acc as u64
}

/// The `rank`-th `k`-subset of `0..m` in lexicographic order.
fn unrank(m: usize, k: usize, mut rank: u64, out: &mut [usize]) {
    let mut next = 0;
    for (slot, item) in out.iter_mut().enumerate().take(k) {
        let mut x = next;
        loop {
            let below = binomial(m - x - 1, k - slot - 1);
            if rank < below {
                break;
            }
            rank -= below;
            x += 1;
        }
        *item = x;
        next = x + 1;
    }
}

/// Advances a lexicographic `k`-subset of `0..m`; false after the last one.
fn advance(m: usize, idx: &mut [usize]) -> bool {
    let k = idx.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if idx[i] < m - k + i {
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

struct Scan<'a> {
    rows: &'a [u64],
    edges: &'a [Edge],
    before: usize,
    budget: Budget,
    /// Minimum i-sets of `g`; only populated when γ(g) = γ_i(g).
    cache: Vec<u64>,
}

enum Outcome {
    Changed { rank: u64, after: usize },
    Budget,
}

impl Scan<'_> {
    /// γ_i after removing the edges at `idx`, or `None` if unchanged.
    fn test(&self, idx: &[usize], work: &mut Vec<u64>) -> Result<Option<usize>, SolveError> {
        work.clear();
        work.extend_from_slice(self.rows);
        for &i in idx {
            let e = self.edges[i];
            work[e.u()] &= !(1u64 << e.v());
            work[e.v()] &= !(1u64 << e.u());
        }
        if !self.cache.is_empty() {
            let full = low_mask(work.len());
            // Edge removal keeps a set independent and cannot lower γ, so a
            // cached i-set that still dominates pins γ_i at its old value.
            let survives = self.cache.iter().any(|&s| {
                let mut cov = s;
                let mut rest = s;
                while rest != 0 {
                    cov |= work[rest.trailing_zeros() as usize];
                    rest &= rest - 1;
                }
                cov == full
            });
            if survives {
                return Ok(None);
            }
        }
        let after = gamma_i_rows(work, self.budget)?.size;
        Ok((after != self.before).then_some(after))
    }

    /// First event among ranks `start..end` of the `k`-subsets.
    fn scan_range(&self, k: usize, start: u64, end: u64) -> Option<Outcome> {
        let m = self.edges.len();
        let mut idx = vec![0usize; k];
        unrank(m, k, start, &mut idx);
        let mut work = Vec::with_capacity(self.rows.len());
        let mut rank = start;
        while rank < end {
            match self.test(&idx, &mut work) {
                Ok(Some(after)) => return Some(Outcome::Changed { rank, after }),
                Ok(None) => {}
                Err(_) => return Some(Outcome::Budget),
            }
            rank += 1;
            if !advance(m, &mut idx) {
                break;
            }
        }
        None
    }

    fn scan(&self, k: usize, parallel: bool) -> Option<Outcome> {
        let total = binomial(self.edges.len(), k);
        if !parallel || total <= CHUNK || total == u64::MAX {
            return self.scan_range(k, 0, total);
        }
        let chunks = total.div_ceil(CHUNK);
        (0..chunks).into_par_iter().find_map_first(|c| {
            let start = c * CHUNK;
            self.scan_range(k, start, (start + CHUNK).min(total))
        })
    }
}

pub fn bondage_id_with(g: &Graph, opts: &BondageOptions) -> Result<BondageCertificate, BondageError> {
    let edges = g.edges();
    let m = edges.len();
    if m == 0 {
        return Err(BondageError::NoEdges);
    }
    let budget_err = |_| BondageError::BudgetExceeded { verified_k: 0 };
    let before = gamma_i(g, opts.budget).map_err(budget_err)?.size;
    let mut cache = Vec::new();
    if opts.use_cache {
        let gamma = domination_number(g, opts.budget).map_err(budget_err)?.size;
        if gamma == before {
            cache = minimum_ids_sets(g, CACHE_SETS, opts.budget)
                .map_err(budget_err)?
                .into_iter()
                .map(|s| s.bits())
                .collect();
        }
    }
    let scan = Scan { rows: g.rows(), edges: &edges, before, budget: opts.budget, cache };
    let mut tested_before = 0u64;
    for k in 1..=m {
        match scan.scan(k, opts.parallel) {
            Some(Outcome::Changed { rank, after }) => {
                let mut idx = vec![0; k];
                unrank(m, k, rank, &mut idx);
                return Ok(BondageCertificate {
                    k,
                    removed: idx.iter().map(|&i| edges[i]).collect(),
                    gamma_before: before,
                    gamma_after: after,
                    subsets_tested: tested_before.saturating_add(rank + 1),
                    direction: if after > before { Direction::Increased } else { Direction::Decreased },
                });
            }
            Some(Outcome::Budget) => return Err(BondageError::BudgetExceeded { verified_k: k - 1 }),
            None => tested_before = tested_before.saturating_add(binomial(m, k)),
        }
    }
    unreachable!("removing every edge leaves an edgeless graph with gamma_i = n > gamma_i(g)")
}

fn reference_gamma_i(g: &Graph) -> usize {
    if g.n() <= ORACLE_MAX_N {
        gamma_i_oracle(g).size
    } else {
        gamma_i(g, Budget::UNLIMITED).expect("unlimited budget").size
    }
}

/// Re-derives a certificate from scratch: both γ_i values, the change, and
/// the absence of any smaller edge set that changes γ_i.
pub fn verify_certificate(g: &Graph, cert: &BondageCertificate) -> Result<bool, BondageError> {
    let after_graph = g.remove_edges(&cert.removed)?;
    if cert.k == 0 || cert.removed.len() != cert.k {
        return Ok(false);
    }
    let before = reference_gamma_i(g);
    let after = reference_gamma_i(&after_graph);
    let direction = if after > before { Direction::Increased } else { Direction::Decreased };
    if before != cert.gamma_before || after != cert.gamma_after || after == before || direction != cert.direction {
        return Ok(false);
    }
    let edges = g.edges();
    let m = edges.len();
    for k in 1..cert.k {
        let mut idx: Vec<usize> = (0..k).collect();
        loop {
            let es: EdgeSet = idx.iter().map(|&i| edges[i]).collect();
            if reference_gamma_i(&g.remove_edges(&es)?) != before {
                return Ok(false);
            }
            if !advance(m, &mut idx) {
                break;
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{complete, complete_bipartite, cycle, make_family, path, FamilyName, FamilySpec};

    const U: Budget = Budget::UNLIMITED;

    fn es(pairs: &[(usize, usize)]) -> EdgeSet {
        pairs.iter().map(|&(a, b)| Edge::new(a, b).unwrap()).collect()
    }

    /// Definition-level b_id: every edge subset by size, γ_i by enumeration.
    fn brute_bondage(g: &Graph) -> (usize, EdgeSet, usize) {
        let edges = g.edges();
        let before = gamma_i_oracle(g).size;
        for k in 1..=edges.len() {
            for pick in itertools::Itertools::combinations(edges.iter().copied(), k) {
                let removed: EdgeSet = pick.into_iter().collect();
                let after = gamma_i_oracle(&g.remove_edges(&removed).unwrap()).size;
                if after != before {
                    return (k, removed, after);
                }
            }
        }
        unreachable!()
    }

    #[test]
    fn combination_ranks_are_lexicographic() {
        for m in 1..=7 {
            for k in 1..=m {
                let mut idx: Vec<usize> = (0..k).collect();
                let mut rank = 0;
                loop {
                    let mut u = vec![0; k];
                    unrank(m, k, rank, &mut u);
                    assert_eq!(u, idx);
                    rank += 1;
                    if !advance(m, &mut idx) {
                        break;
                    }
                }
                assert_eq!(rank, binomial(m, k));
            }
        }
        assert_eq!(binomial(2016, 1000), u64::MAX);
    }

    #[test]
    fn published_family_values() {
        let b = |g: Graph| bondage_id(&g, U).unwrap();
        assert_eq!(b(path(5).unwrap()).k, 1);
        assert_eq!(b(path(4).unwrap()).k, 2);
        assert_eq!(b(cycle(4).unwrap()).k, 3);
        assert_eq!(b(cycle(6).unwrap()).k, 2);
        assert_eq!(b(complete_bipartite(1, 6).unwrap()).k, 1);
    }

    #[test]
    fn complete_four_drops_a_matching() {
        let c = bondage_id(&complete(4).unwrap(), U).unwrap();
        assert_eq!(c.k, 2);
        assert_eq!(c.removed, es(&[(0, 1), (2, 3)]));
        assert_eq!((c.gamma_before, c.gamma_after, c.direction), (1, 2, Direction::Increased));
        // {01,02} {01,03} {01,12} {01,13} keep a universal vertex.
        assert_eq!(c.subsets_tested, 6 + 5);
    }

    #[test]
    fn bowtie_needs_one_edge() {
        let f2 = make_family(&FamilySpec::new(FamilyName::Friendship, 2)).unwrap();
        let c = bondage_id(&f2, U).unwrap();
        assert_eq!((c.k, c.removed.clone()), (1, es(&[(0, 1)])));
        assert_eq!((c.gamma_before, c.gamma_after), (1, 2));
    }

    #[test]
    fn double_star_decreases() {
        let g = Graph::build(6, [(0, 1), (0, 2), (0, 3), (1, 4), (1, 5)]).unwrap();
        let c = bondage_id(&g, U).unwrap();
        assert_eq!(c.k, 1);
        assert_eq!(c.removed, es(&[(0, 1)]));
        assert_eq!((c.gamma_before, c.gamma_after, c.direction), (3, 2, Direction::Decreased));
    }

    #[test]
    fn edgeless_is_rejected() {
        assert_eq!(bondage_id(&Graph::empty(3).unwrap(), U), Err(BondageError::NoEdges));
        assert_eq!(bondage_id(&Graph::empty(0).unwrap(), U), Err(BondageError::NoEdges));
    }

    #[test]
    fn budget_reports_verified_size() {
        let c4 = cycle(4).unwrap();
        assert_eq!(bondage_id(&c4, Budget::nodes(1)), Err(BondageError::BudgetExceeded { verified_k: 0 }));
    }

    #[test]
    fn certificate_checks() {
        let c4 = cycle(4).unwrap();
        let cert = bondage_id(&c4, U).unwrap();
        assert_eq!(cert.k, 3);
        assert!(verify_certificate(&c4, &cert).unwrap());

        let mut forged = cert.clone();
        forged.k = 2;
        forged.removed = es(&[(0, 1), (2, 3)]);
        assert!(!verify_certificate(&c4, &forged).unwrap());

        let p5 = path(5).unwrap();
        assert!(verify_certificate(&p5, &bondage_id(&p5, U).unwrap()).unwrap());

        let mut missing = cert;
        missing.removed = es(&[(0, 2), (0, 1), (1, 2)]);
        assert_eq!(verify_certificate(&c4, &missing), Err(BondageError::MissingEdge(Edge::new(0, 2).unwrap())));
    }

    #[test]
    fn matches_brute_force_up_to_five_vertices() {
        for n in 2..=5usize {
            for code in 1..1u64 << (n * (n - 1) / 2) {
                let g = Graph::from_triangle_code(n, code);
                let cert = bondage_id(&g, U).unwrap();
                let (k, removed, after) = brute_bondage(&g);
                assert_eq!((cert.k, &cert.removed, cert.gamma_after), (k, &removed, after), "{g:?}");
                assert!(cert.k <= g.m());
                for opts in [
                    BondageOptions { parallel: true, ..Default::default() },
                    BondageOptions { use_cache: true, ..Default::default() },
                ] {
                    assert_eq!(bondage_id_with(&g, &opts).unwrap(), cert);
                }
            }
        }
    }

    #[test]
    fn cache_and_parallel_agree_on_larger_graphs() {
        let graphs = [
            complete(6).unwrap(),
            cycle(10).unwrap(),
            complete_bipartite(3, 4).unwrap(),
            make_family(&FamilySpec::new(FamilyName::Book, 3)).unwrap(),
            make_family(&FamilySpec::gen_friendship(4, 2)).unwrap(),
        ];
        for g in graphs {
            let base = bondage_id(&g, U).unwrap();
            for (parallel, use_cache) in [(true, false), (false, true), (true, true)] {
                let opts = BondageOptions { budget: U, parallel, use_cache };
                assert_eq!(bondage_id_with(&g, &opts).unwrap(), base, "{g:?}");
            }
        }
    }

    #[test]
    fn certificate_json_field_names() {
        let cert = bondage_id(&path(3).unwrap(), U).unwrap();
        let json = serde_json::to_value(&cert).unwrap();
        for key in ["k", "removed", "gamma_before", "gamma_after", "subsets_tested", "direction"] {
            assert!(json.get(key).is_some(), "{key}");
        }
        assert_eq!(json["removed"], serde_json::json!([[0, 1]]));
        let back: BondageCertificate = serde_json::from_value(json).unwrap();
        assert_eq!(back, cert);
    }
}
