//! Simple undirected graphs on at most [`MAX_VERTICES`] vertices.
//!
//! Every row of the adjacency matrix is a single `u64`, so vertex sets are
//! plain bit masks and neighborhood operations are a handful of word ops.
//! Graphs are values: every mutation returns a new graph.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest vertex count a [`Graph`] can hold.
pub const MAX_VERTICES: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("loop edge at vertex {0}")]
    LoopEdge(usize),
    #[error("duplicate edge {0}")]
    DuplicateEdge(Edge),
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("graph on {0} vertices exceeds the supported width of {MAX_VERTICES}")]
    TooManyVertices(usize),
    #[error("edge {0} is not present in the graph")]
    MissingEdge(Edge),
    #[error("vertex {0} is not a member of the set")]
    NotInSet(usize),
    #[error("operation needs at least one vertex")]
    EmptyGraph,
}

/// An undirected edge, stored with `u < v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(into = "[usize; 2]", try_from = "[usize; 2]")]
pub struct Edge {
    u: usize,
    v: usize,
}

impl Edge {
    /// Normalizes the endpoint order. Fails on loops.
    pub fn new(a: usize, b: usize) -> Result<Self, GraphError> {
        match a.cmp(&b) {
            std::cmp::Ordering::Less => Ok(Edge { u: a, v: b }),
            std::cmp::Ordering::Greater => Ok(Edge { u: b, v: a }),
            std::cmp::Ordering::Equal => Err(GraphError::LoopEdge(a)),
        }
    }

    pub fn u(&self) -> usize {
        self.u
    }

    pub fn v(&self) -> usize {
        self.v
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.u, self.v)
    }
}

impl From<Edge> for [usize; 2] {
    fn from(e: Edge) -> Self {
        [e.u, e.v]
    }
}

impl TryFrom<[usize; 2]> for Edge {
    type Error = GraphError;

    fn try_from(p: [usize; 2]) -> Result<Self, Self::Error> {
        Edge::new(p[0], p[1])
    }
}

/// Strictly increasing list of distinct edges.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct EdgeSet(Vec<Edge>);

impl EdgeSet {
    pub fn new() -> Self {
        EdgeSet(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Edge> + '_ {
        self.0.iter()
    }

    pub fn as_slice(&self) -> &[Edge] {
        &self.0
    }

    pub fn contains(&self, e: &Edge) -> bool {
        self.0.binary_search(e).is_ok()
    }
}

impl FromIterator<Edge> for EdgeSet {
    fn from_iter<I: IntoIterator<Item = Edge>>(iter: I) -> Self {
        let mut edges: Vec<Edge> = iter.into_iter().collect();
        edges.sort_unstable();
        edges.dedup();
        EdgeSet(edges)
    }
}

impl<'a> IntoIterator for &'a EdgeSet {
    type Item = &'a Edge;
    type IntoIter = std::slice::Iter<'a, Edge>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

/// Bit set over the vertices `0..64`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(from = "Vec<usize>", into = "Vec<usize>")]
pub struct VertexSet(u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub fn from_bits(bits: u64) -> Self {
        VertexSet(bits)
    }

    /// The set `{0, .., n-1}`.
    pub fn full(n: usize) -> Self {
        VertexSet(low_mask(n))
    }

    pub fn singleton(v: usize) -> Self {
        VertexSet(1u64 << v)
    }

    pub fn bits(&self) -> u64 {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.0 == 0
    }

    pub fn contains(&self, v: usize) -> bool {
        v < MAX_VERTICES && self.0 >> v & 1 == 1
    }

    pub fn insert(&mut self, v: usize) {
        self.0 |= 1u64 << v;
    }

    pub fn remove(&mut self, v: usize) {
        self.0 &= !(1u64 << v);
    }

    pub fn union(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 | other.0)
    }

    pub fn intersection(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 & other.0)
    }

    pub fn difference(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 & !other.0)
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn min(&self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    /// Members in increasing order.
    pub fn iter(&self) -> BitIter {
        BitIter(self.0)
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = VertexSet::EMPTY;
        for v in iter {
            s.insert(v);
        }
        s
    }
}

impl From<Vec<usize>> for VertexSet {
    fn from(v: Vec<usize>) -> Self {
        v.into_iter().filter(|&x| x < MAX_VERTICES).collect()
    }
}

impl From<VertexSet> for Vec<usize> {
    fn from(s: VertexSet) -> Self {
        s.to_vec()
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

/// Iterator over set bits of a word, lowest first.
#[derive(Debug, Clone)]
pub struct BitIter(pub(crate) u64);

impl Iterator for BitIter {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(v)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let k = self.0.count_ones() as usize;
        (k, Some(k))
    }
}

impl ExactSizeIterator for BitIter {}

pub(crate) fn low_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DegreeStats {
    pub degrees: Vec<usize>,
    pub delta_min: usize,
    pub delta_max: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SetPredicates {
    pub independent: bool,
    pub dominating: bool,
}

/// A simple undirected graph on vertices `0..n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<u64>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let edges: Vec<String> = self.edges().iter().map(|e| e.to_string()).collect();
        write!(f, "Graph(n={}, [{}])", self.n, edges.join(" "))
    }
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Graph, GraphError> {
        if n > MAX_VERTICES {
            return Err(GraphError::TooManyVertices(n));
        }
        Ok(Graph { n, adj: vec![0; n] })
    }

    /// Builds a graph from endpoint pairs. Rejects loops, duplicates and
    /// endpoints outside `0..n`.
    pub fn build<I>(n: usize, edges: I) -> Result<Graph, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Graph::empty(n)?;
        for (a, b) in edges {
            for x in [a, b] {
                if x >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: x, n });
                }
            }
            let e = Edge::new(a, b)?;
            if g.has_edge(e.u, e.v) {
                return Err(GraphError::DuplicateEdge(e));
            }
            g.set_edge(e.u, e.v);
        }
        g.debug_check();
        Ok(g)
    }

    /// Wraps raw adjacency rows. Rows must already be symmetric and loop-free.
    pub(crate) fn from_rows(n: usize, adj: Vec<u64>) -> Graph {
        let g = Graph { n, adj };
        g.debug_check();
        g
    }

    fn set_edge(&mut self, u: usize, v: usize) {
        self.adj[u] |= 1u64 << v;
        self.adj[v] |= 1u64 << u;
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.adj.iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adj[u] >> v & 1 == 1
    }

    pub(crate) fn rows(&self) -> &[u64] {
        &self.adj
    }

    /// All edges in lexicographic order.
    pub fn edges(&self) -> Vec<Edge> {
        let mut out = Vec::new();
        for u in 0..self.n {
            let higher = self.adj[u] & !low_mask(u + 1);
            out.extend(BitIter(higher).map(|v| Edge { u, v }));
        }
        out
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    /// Open neighborhood. Panics if `v` is out of range.
    pub fn neighbors(&self, v: usize) -> VertexSet {
        VertexSet(self.adj[v])
    }

    pub fn closed_neighbors(&self, v: usize) -> VertexSet {
        VertexSet(self.adj[v] | 1u64 << v)
    }

    fn check_vertex(&self, v: usize) -> Result<(), GraphError> {
        if v >= self.n {
            Err(GraphError::VertexOutOfRange { vertex: v, n: self.n })
        } else {
            Ok(())
        }
    }

    /// `(N(v), N[v])`.
    pub fn neighborhoods(&self, v: usize) -> Result<(VertexSet, VertexSet), GraphError> {
        self.check_vertex(v)?;
        Ok((self.neighbors(v), self.closed_neighbors(v)))
    }

    /// Vertices whose only neighbor inside `s` is `v`.
    pub fn private_neighborhood(&self, v: usize, s: VertexSet) -> Result<VertexSet, GraphError> {
        self.check_vertex(v)?;
        if !s.contains(v) {
            return Err(GraphError::NotInSet(v));
        }
        let target = 1u64 << v;
        Ok((0..self.n).filter(|&u| self.adj[u] & s.0 == target).collect())
    }

    pub fn degree_stats(&self) -> Result<DegreeStats, GraphError> {
        let degrees: Vec<usize> = (0..self.n).map(|v| self.degree(v)).collect();
        let delta_min = *degrees.iter().min().ok_or(GraphError::EmptyGraph)?;
        let delta_max = *degrees.iter().max().ok_or(GraphError::EmptyGraph)?;
        Ok(DegreeStats { degrees, delta_min, delta_max })
    }

    /// Minimum degree, or `None` for the empty graph.
    pub fn min_degree(&self) -> Option<usize> {
        (0..self.n).map(|v| self.degree(v)).min()
    }

    pub fn is_independent(&self, s: VertexSet) -> bool {
        s.iter().all(|v| self.adj[v] & s.0 == 0)
    }

    pub fn is_dominating(&self, s: VertexSet) -> bool {
        let covered = s.iter().fold(s.0, |acc, v| acc | self.adj[v]);
        covered & low_mask(self.n) == low_mask(self.n)
    }

    pub fn set_predicates(&self, s: VertexSet) -> SetPredicates {
        SetPredicates { independent: self.is_independent(s), dominating: self.is_dominating(s) }
    }

    /// Connected components ordered by their least vertex.
    pub fn components(&self) -> Vec<VertexSet> {
        let mut seen = 0u64;
        let mut out = Vec::new();
        for start in 0..self.n {
            if seen >> start & 1 == 1 {
                continue;
            }
            let mut comp = 1u64 << start;
            let mut frontier = comp;
            while frontier != 0 {
                let mut next = 0u64;
                for v in BitIter(frontier) {
                    next |= self.adj[v];
                }
                frontier = next & !comp;
                comp |= next;
            }
            seen |= comp;
            out.push(VertexSet(comp));
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Copy of the graph without the edges of `es`.
    pub fn remove_edges(&self, es: &EdgeSet) -> Result<Graph, GraphError> {
        let mut adj = self.adj.clone();
        for e in es {
            if !self.has_edge(e.u, e.v) {
                return Err(GraphError::MissingEdge(*e));
            }
            adj[e.u] &= !(1u64 << e.v);
            adj[e.v] &= !(1u64 << e.u);
        }
        Ok(Graph::from_rows(self.n, adj))
    }

    pub fn remove_edge(&self, e: Edge) -> Result<Graph, GraphError> {
        self.remove_edges(&EdgeSet(vec![e]))
    }

    pub fn complement(&self) -> Graph {
        let full = low_mask(self.n);
        let adj = (0..self.n).map(|v| !self.adj[v] & full & !(1u64 << v)).collect();
        Graph::from_rows(self.n, adj)
    }

    /// `self` followed by `other` with labels shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Result<Graph, GraphError> {
        let n = self.n + other.n;
        if n > MAX_VERTICES {
            return Err(GraphError::TooManyVertices(n));
        }
        let mut adj = self.adj.clone();
        adj.extend(other.adj.iter().map(|r| r << self.n));
        Ok(Graph::from_rows(n, adj))
    }

    /// Relabels vertex `v` as `perm[v]`.
    pub fn permute(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n);
        let mut adj = vec![0u64; self.n];
        for u in 0..self.n {
            for v in BitIter(self.adj[u]) {
                adj[perm[u]] |= 1u64 << perm[v];
            }
        }
        Graph::from_rows(self.n, adj)
    }

    /// Upper-triangle adjacency bits in column-major order `(0,1),(0,2),(1,2),(0,3),..`,
    /// packed into one word. Only meaningful for `n <= 11`.
    pub fn triangle_code(&self) -> u64 {
        debug_assert!(self.n * self.n.saturating_sub(1) / 2 <= 64);
        let mut code = 0u64;
        let mut k = 0;
        for j in 1..self.n {
            for i in 0..j {
                if self.adj[i] >> j & 1 == 1 {
                    code |= 1u64 << k;
                }
                k += 1;
            }
        }
        code
    }

    /// Inverse of [`Graph::triangle_code`].
    pub fn from_triangle_code(n: usize, code: u64) -> Graph {
        let mut g = Graph { n, adj: vec![0; n] };
        let mut k = 0;
        for j in 1..n {
            for i in 0..j {
                if code >> k & 1 == 1 {
                    g.set_edge(i, j);
                }
                k += 1;
            }
        }
        g
    }

    /// Least triangle code over all relabelings. Exhaustive, so only for
    /// small graphs (`n <= 8` is practical).
    pub fn canonical_code(&self) -> u64 {
        let n = self.n;
        // Bit position of pair (i, j), i < j, in column-major order.
        let pos = |i: usize, j: usize| j * (j - 1) / 2 + i;
        let edges = self.edges();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut best = u64::MAX;
        loop {
            let code = edges.iter().fold(0u64, |acc, e| {
                let (a, b) = (perm[e.u], perm[e.v]);
                acc | 1u64 << if a < b { pos(a, b) } else { pos(b, a) }
            });
            best = best.min(code);
            if !next_permutation(&mut perm) {
                break;
            }
        }
        best
    }

    pub fn is_isomorphic(&self, other: &Graph) -> bool {
        if self.n != other.n || self.m() != other.m() {
            return false;
        }
        let mut da: Vec<usize> = (0..self.n).map(|v| self.degree(v)).collect();
        let mut db: Vec<usize> = (0..other.n).map(|v| other.degree(v)).collect();
        da.sort_unstable();
        db.sort_unstable();
        da == db && self.canonical_code() == other.canonical_code()
    }

    fn debug_check(&self) {
        debug_assert!(self.n <= MAX_VERTICES);
        debug_assert_eq!(self.adj.len(), self.n);
        for u in 0..self.n {
            debug_assert_eq!(self.adj[u] >> u & 1, 0, "loop at {u}");
            debug_assert_eq!(self.adj[u] & !low_mask(self.n), 0, "bit beyond n in row {u}");
            for v in BitIter(self.adj[u]) {
                debug_assert!(self.adj[v] >> u & 1 == 1, "asymmetric {u}-{v}");
            }
        }
    }
}

fn next_permutation(p: &mut [usize]) -> bool {
    if p.len() < 2 {
        return false;
    }
    let mut i = p.len() - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = p.len() - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}
