//! Generators for the named graph families, each with a fixed labeling so
//! edge witnesses can be compared across runs.
//!
//! | family               | vertices        | edges        |
//! |----------------------|-----------------|--------------|
//! | `path` P_n           | n               | n-1          |
//! | `cycle` C_n          | n               | n            |
//! | `complete` K_n       | n               | n(n-1)/2     |
//! | `complete_bipartite` | m+n             | mn           |
//! | `star` K_{1,n}       | n+1             | n            |
//! | `friendship` F_n     | 2n+1            | 3n           |
//! | `gen_friendship`     | n(q-1)+1        | nq           |
//! | `book` B_n           | 2n+2            | 3n+1         |
//! | `tri_chain` T_n      | 2n+1            | 3n           |
//! | square chains        | 3n+1            | 4n           |

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, GraphError, MAX_VERTICES};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("parameter out of range for {family}: {reason}")]
    ParamOutOfRange { family: FamilyName, reason: String },
    #[error("unknown family name {0:?}")]
    UnknownFamily(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FamilyName {
    Path,
    Cycle,
    Complete,
    CompleteBipartite,
    Star,
    Friendship,
    GenFriendship,
    Book,
    TriChain,
    ParaSquareChain,
    OrthoSquareChain,
}

impl FamilyName {
    pub const ALL: [FamilyName; 11] = [
        FamilyName::Path,
        FamilyName::Cycle,
        FamilyName::Complete,
        FamilyName::CompleteBipartite,
        FamilyName::Star,
        FamilyName::Friendship,
        FamilyName::GenFriendship,
        FamilyName::Book,
        FamilyName::TriChain,
        FamilyName::ParaSquareChain,
        FamilyName::OrthoSquareChain,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            FamilyName::Path => "path",
            FamilyName::Cycle => "cycle",
            FamilyName::Complete => "complete",
            FamilyName::CompleteBipartite => "complete_bipartite",
            FamilyName::Star => "star",
            FamilyName::Friendship => "friendship",
            FamilyName::GenFriendship => "gen_friendship",
            FamilyName::Book => "book",
            FamilyName::TriChain => "tri_chain",
            FamilyName::ParaSquareChain => "para_square_chain",
            FamilyName::OrthoSquareChain => "ortho_square_chain",
        }
    }
}

impl fmt::Display for FamilyName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for FamilyName {
    type Err = FamilyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        FamilyName::ALL.into_iter().find(|f| f.as_str() == s).ok_or_else(|| FamilyError::UnknownFamily(s.to_string()))
    }
}

/// A family member: `n` is the main size parameter, `m` the second side of
/// `complete_bipartite`, `q` the cycle length of `gen_friendship`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FamilySpec {
    pub name: FamilyName,
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<usize>,
}

impl FamilySpec {
    pub fn new(name: FamilyName, n: usize) -> Self {
        FamilySpec { name, n, m: None, q: None }
    }

    pub fn complete_bipartite(m: usize, n: usize) -> Self {
        FamilySpec { name: FamilyName::CompleteBipartite, n, m: Some(m), q: None }
    }

    pub fn gen_friendship(q: usize, n: usize) -> Self {
        FamilySpec { name: FamilyName::GenFriendship, n, m: None, q: Some(q) }
    }

    /// `(vertices, edges)` of the member, without building it.
    pub fn expected_size(&self) -> Option<(usize, usize)> {
        let n = self.n;
        Some(match self.name {
            FamilyName::Path => (n, n.checked_sub(1)?),
            FamilyName::Cycle => (n, n),
            FamilyName::Complete => (n, n * n.saturating_sub(1) / 2),
            FamilyName::CompleteBipartite => (self.m? + n, self.m? * n),
            FamilyName::Star => (n + 1, n),
            FamilyName::Friendship => (2 * n + 1, 3 * n),
            FamilyName::GenFriendship => (n * (self.q?.checked_sub(1)?) + 1, n * self.q?),
            FamilyName::Book => (2 * n + 2, 3 * n + 1),
            FamilyName::TriChain => (2 * n + 1, 3 * n),
            FamilyName::ParaSquareChain | FamilyName::OrthoSquareChain => (3 * n + 1, 4 * n),
        })
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.m, self.q) {
            (Some(m), _) => write!(f, "{}(m={}, n={})", self.name, m, self.n),
            (_, Some(q)) => write!(f, "{}(q={}, n={})", self.name, q, self.n),
            _ => write!(f, "{}({})", self.name, self.n),
        }
    }
}

fn out_of_range(family: FamilyName, reason: impl Into<String>) -> FamilyError {
    FamilyError::ParamOutOfRange { family, reason: reason.into() }
}

fn require(spec: &FamilySpec, cond: bool, reason: &str) -> Result<(), FamilyError> {
    if cond {
        Ok(())
    } else {
        Err(out_of_range(spec.name, reason))
    }
}

/// Builds the family member described by `spec`.
pub fn make_family(spec: &FamilySpec) -> Result<Graph, FamilyError> {
    let n = spec.n;
    match spec.name {
        FamilyName::CompleteBipartite => require(spec, spec.m.is_some(), "m is required")?,
        FamilyName::GenFriendship => require(spec, spec.q.is_some(), "q is required")?,
        _ => {}
    }
    let min_n = if spec.name == FamilyName::Cycle { 3 } else { 1 };
    require(spec, n >= min_n, &format!("n must be at least {min_n}"))?;
    if let Some(m) = spec.m {
        require(spec, m >= 1, "m must be at least 1")?;
    }
    if let Some(q) = spec.q {
        require(spec, q >= 3, "q must be at least 3")?;
    }
    let (order, _) = spec.expected_size().ok_or_else(|| out_of_range(spec.name, "inconsistent parameters"))?;
    if order > MAX_VERTICES {
        return Err(out_of_range(spec.name, format!("{order} vertices exceeds {MAX_VERTICES}")));
    }
    let g = match spec.name {
        FamilyName::Path => path(n),
        FamilyName::Cycle => cycle(n),
        FamilyName::Complete => complete(n),
        FamilyName::CompleteBipartite => complete_bipartite(spec.m.unwrap_or(1), n),
        FamilyName::Star => complete_bipartite(1, n),
        FamilyName::Friendship => flower(3, n),
        FamilyName::GenFriendship => flower(spec.q.unwrap_or(3), n),
        FamilyName::Book => book(n),
        FamilyName::TriChain => tri_chain(n),
        FamilyName::ParaSquareChain => square_chain(n, false),
        FamilyName::OrthoSquareChain => square_chain(n, true),
    }?;
    Ok(g)
}

/// `0 - 1 - .. - (n-1)`.
pub fn path(n: usize) -> Result<Graph, GraphError> {
    Graph::build(n, (1..n).map(|i| (i - 1, i)))
}

/// Path `0..n` closed by `{n-1, 0}`; needs `n >= 3`.
pub fn cycle(n: usize) -> Result<Graph, GraphError> {
    Graph::build(n, (0..n).map(|i| (i, (i + 1) % n)))
}

pub fn complete(n: usize) -> Result<Graph, GraphError> {
    Graph::build(n, (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))))
}

/// Sides `0..m` and `m..m+n`.
pub fn complete_bipartite(m: usize, n: usize) -> Result<Graph, GraphError> {
    Graph::build(m + n, (0..m).flat_map(|a| (m..m + n).map(move |b| (a, b))))
}

/// `n` cycles of length `q` through hub 0; cycle `i` walks
/// `0, 1+i(q-1), .., (i+1)(q-1), 0`.
fn flower(q: usize, n: usize) -> Result<Graph, GraphError> {
    let mut edges = Vec::with_capacity(n * q);
    for i in 0..n {
        let first = 1 + i * (q - 1);
        let last = first + q - 2;
        edges.push((0, first));
        edges.extend((first..last).map(|v| (v, v + 1)));
        edges.push((last, 0));
    }
    Graph::build(n * (q - 1) + 1, edges)
}

/// Spine `0-1`; page `i` in `1..=n` is the square `0, 2i, 2i+1, 1`.
fn book(n: usize) -> Result<Graph, GraphError> {
    let mut edges = vec![(0, 1)];
    for i in 1..=n {
        edges.extend([(0, 2 * i), (2 * i, 2 * i + 1), (2 * i + 1, 1)]);
    }
    Graph::build(2 * n + 2, edges)
}

/// Cut vertices `x_i = 2i`, apex `y_i = 2i+1` of triangle `x_i y_i x_{i+1}`.
fn tri_chain(n: usize) -> Result<Graph, GraphError> {
    let edges = (0..n).flat_map(|i| {
        let (x, y, z) = (2 * i, 2 * i + 1, 2 * i + 2);
        [(x, y), (y, z), (x, z)]
    });
    Graph::build(2 * n + 1, edges)
}

/// Square `i` uses `x_i = 3i`, `3i+1`, `3i+2` and `x_{i+1} = 3i+3`.
/// Para: `x_i` and `x_{i+1}` are opposite corners. Ortho: they share an edge.
fn square_chain(n: usize, ortho: bool) -> Result<Graph, GraphError> {
    let edges = (0..n).flat_map(|i| {
        let (x, a, b, y) = (3 * i, 3 * i + 1, 3 * i + 2, 3 * i + 3);
        if ortho {
            // x - y - a - b - x
            [(x, y), (y, a), (a, b), (b, x)]
        } else {
            // x - a - y - b - x
            [(x, a), (a, y), (y, b), (b, x)]
        }
    });
    Graph::build(3 * n + 1, edges)
}
