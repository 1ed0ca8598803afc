//! Published statements about γ_i and b_id, each checked as a hypothesis
//! against exact values.
//!
//! A [`Claim`] is bound to concrete parameters (a family index, a graph, a
//! graph and some of its edges, or a pair of graphs) and evaluated by
//! [`check_claim`]. Equalities are confirmed only on an exact match and bounds
//! only when the inequality holds. Bindings that violate a claim's hypothesis
//! are `NOT_APPLICABLE`, never confirmed. Every b_id value used in a verdict
//! comes with its certificate so a refutation can be replayed.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bondage::{bondage_id, BondageCertificate, BondageError};
use crate::census::unlabeled_graphs;
use crate::families::{self, make_family, FamilyName, FamilySpec};
use crate::graph::{Edge, EdgeSet, Graph, VertexSet};
use crate::io::{parse_graph6, write_graph6};
use crate::products::{corona, join, lexicographic};
use crate::solvers::{gamma_i, Budget};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AuditError {
    #[error("unknown claim {0:?}")]
    UnknownClaim(String),
    #[error("binding {binding} is outside the scope of {claim}: {reason}")]
    BindingOutOfScope { claim: String, binding: String, reason: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClaimKind {
    Equality,
    UpperBound,
    LowerBound,
    Existential,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Scope {
    Family,
    AllGraphs,
    GraphPair,
}

/// Shape of the parameters a claim accepts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Shape {
    N { min: usize },
    Mn,
    Qn,
    Graph,
    GraphEdges { s: usize },
    Pair,
}

#[derive(Debug, Clone, Serialize)]
pub struct Claim {
    pub id: &'static str,
    pub kind: ClaimKind,
    pub scope: Scope,
    /// Machine form of the statement in terms of computed invariants.
    pub statement: &'static str,
    /// The statement as it appears in the literature, in formula form.
    pub anchor: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub remark: Option<&'static str>,
    #[serde(skip)]
    shape: Shape,
}

macro_rules! claim {
    ($id:literal, $kind:ident, $scope:ident, $shape:expr, $stmt:literal, $anchor:literal) => {
        claim!($id, $kind, $scope, $shape, $stmt, $anchor, None)
    };
    ($id:literal, $kind:ident, $scope:ident, $shape:expr, $stmt:literal, $anchor:literal, $remark:expr) => {
        Claim {
            id: $id,
            kind: ClaimKind::$kind,
            scope: Scope::$scope,
            statement: $stmt,
            anchor: $anchor,
            remark: $remark,
            shape: $shape,
        }
    };
}

/// Every audited statement, in report order.
pub fn claims_catalog() -> Vec<Claim> {
    use Shape::*;
    vec![
        claim!("STAR-B", Equality, Family, N { min: 1 }, "b_id(star(n)) == 1", "b_id(K_{1,n}) = 1"),
        claim!("KMN-B", Equality, Family, Mn, "b_id(complete_bipartite(m,n)) == min(m,n)", "b_id(K_{m,n}) = min{m,n}"),
        claim!("FRIEND-GI", Equality, Family, N { min: 1 }, "gamma_i(friendship(n)) == 1", "gamma_i(F_n) = 1"),
        claim!(
            "FLOWER-GI", Equality, Family, Qn,
            "gamma_i(gen_friendship(q,n)) == n+1 for q in {4,5,6}",
            "gamma_i(F_{4,n}) = gamma_i(F_{5,n}) = gamma_i(F_{6,n}) = n+1"
        ),
        claim!("BOOK-GI", Equality, Family, N { min: 2 }, "gamma_i(book(n)) == n", "gamma_i(B_n) = n"),
        claim!(
            "FRIEND-B", Equality, Family, N { min: 1 },
            "b_id(friendship(n)) == 2",
            "b_id(F_n) = 2, by deleting two hub edges of one triangle"
        ),
        claim!("FLOWER-B", Equality, Family, Qn, "b_id(gen_friendship(q,n)) == 3 for q in {4,5,6}", "b_id(F_{k,n}) = 3, k = 4,5,6"),
        claim!(
            "BOOK-B", Equality, Family, N { min: 2 },
            "b_id(book(n)) == 3",
            "b_id(B_n) = 3, by deleting three consecutive edges of a page"
        ),
        claim!(
            "GAP", Existential, Family, N { min: 3 },
            "gamma_i(complete(n)) == gamma_i(star(n-1)) and |b_id(complete(n)) - b_id(star(n-1))| == n-2",
            "|b_id(G) - b_id(H)| unbounded for gamma_i(G) = gamma_i(H), via G = K_n, H = K_{1,n-1}",
            Some("instance check of the construction; the existence statement itself is not decided by a failed instance")
        ),
        claim!(
            "PC-GI", Equality, Family, N { min: 1 },
            "gamma_i(path(n)) == ceil(n/3) and gamma_i(cycle(n)) == ceil(n/3) for n >= 3",
            "gamma_i(P_n) = gamma_i(C_n) = ceil(n/3)"
        ),
        claim!("DELTA", UpperBound, AllGraphs, Graph, "b_id(G) <= delta(G) + 1", "b_id(G) <= delta(G) + 1"),
        claim!(
            "PATH-B", Equality, Family, N { min: 2 },
            "b_id(path(n)) == (2 if n % 3 == 1 else 1)",
            "b_id(P_n) = 2 if n = 1 (mod 3), otherwise 1"
        ),
        claim!(
            "CYCLE-B", Equality, Family, N { min: 3 },
            "b_id(cycle(n)) == (3 if n % 3 == 1 else 2)",
            "b_id(C_n) = 3 if n = 1 (mod 3), otherwise 2"
        ),
        claim!("KN-GI", Equality, Family, N { min: 1 }, "gamma_i(complete(n)) == 1", "gamma_i(K_n) = 1"),
        claim!("KN-B", Equality, Family, N { min: 2 }, "b_id(complete(n)) == n-1", "b_id(K_n) = n-1"),
        claim!("TRI-GI", Equality, Family, N { min: 1 }, "gamma_i(tri_chain(n)) == n", "gamma_i(T_n) = n"),
        claim!("TRI-B", Equality, Family, N { min: 1 }, "b_id(tri_chain(n)) == 2", "b_id(T_n) = 2"),
        claim!(
            "SQ-GI", Equality, Family, N { min: 1 },
            "gamma_i(para_square_chain(n)) == gamma_i(ortho_square_chain(n)) == ceil(n/2)",
            "gamma_i(Q_n) = gamma_i(O_n) = ceil(n/2)"
        ),
        claim!("PARA-B", Equality, Family, N { min: 1 }, "b_id(para_square_chain(n)) == 2", "b_id(Q_n) = 2"),
        claim!("ORTHO-B", Equality, Family, N { min: 1 }, "b_id(ortho_square_chain(n)) == 2", "b_id(O_n) = 2"),
        claim!(
            "EDGE-DEL", UpperBound, AllGraphs, GraphEdges { s: 1 },
            "b_id(G) <= b_id(G - e) + 1 whenever G - e has an edge",
            "b_id(G) <= b_id(G-e) + 1"
        ),
        claim!(
            "EDGE-DEL-S", UpperBound, AllGraphs, GraphEdges { s: 2 },
            "b_id(G) <= b_id(G - e1 - e2) + 2 for 2 <= |E(G)| - 2",
            "b_id(G) <= b_id(G - e_1 - ... - e_s) + s, 1 <= s <= |E(G)| - 2"
        ),
        claim!("ORDER", UpperBound, AllGraphs, Graph, "b_id(G) <= n + 1 - 2 gamma_i(G)", "b_id(G) <= n + 1 - 2 gamma_i(G)"),
        claim!(
            "ORDER-COR", Equality, AllGraphs, Graph,
            "b_id(G) == n-1 implies gamma_i(G) == 1 (n >= 2)",
            "b_id(G) = n-1 implies gamma_i(G) = 1"
        ),
        claim!(
            "MINMAX", UpperBound, AllGraphs, Graph,
            "gamma_i(G) >= 2 implies b_id(G) <= min(delta+1, n-delta-1)",
            "b_id(G) <= min{delta(G)+1, n-delta(G)-1} when gamma_i(G) >= 2"
        ),
        claim!(
            "COMPL-1", UpperBound, AllGraphs, Graph,
            "gamma_i(G) == 1 or gamma_i(co-G) == 1 implies b_id(G) + b_id(co-G) <= n + 1",
            "b_id(G) + b_id(co-G) <= n+1 when gamma_i(G) = 1 or gamma_i(co-G) = 1, sharp for K_n",
            Some("the complement term, written b_i, is read as b_id")
        ),
        claim!(
            "NG", UpperBound, AllGraphs, Graph,
            "gamma_i(G) >= 2 and gamma_i(co-G) >= 2 imply b_id(G) + b_id(co-G) <= (n if n even else n-1)",
            "b_id(G) + b_id(co-G) <= n (n even), n-1 (n odd)"
        ),
        claim!(
            "JOIN-GI", Equality, GraphPair, Pair,
            "gamma_i(join(G,H)) == min(gamma_i(G), gamma_i(H))",
            "gamma_i(G v H) = min{gamma_i(G), gamma_i(H)}",
            Some("run under both readings of nonempty; each binding notes whether both operands have edges")
        ),
        claim!(
            "JOIN-B", Equality, GraphPair, Pair,
            "b_id(join(G,H)) == min(b_id(G), b_id(H))",
            "b_id(G v H) = min{b_id(G), b_id(H)}"
        ),
        claim!(
            "LEX-GI", Equality, GraphPair, Pair,
            "gamma_i(lex(G,H)) == gamma_i(G) * gamma_i(H)",
            "gamma_i(G[H]) = gamma_i(G) gamma_i(H)"
        ),
        claim!(
            "LEX-B", Equality, GraphPair, Pair,
            "b_id(lex(G,H)) == min(b_id(G), b_id(H))",
            "b_id(G[H]) = min{b_id(G), b_id(H)}"
        ),
        claim!(
            "CORONA-GI", Equality, GraphPair, Pair,
            "gamma_i(corona(G,H)) == |V(G)| * gamma_i(H)",
            "gamma_i(G o H) = |V(G)| gamma_i(H)"
        ),
        claim!(
            "CORONA-B", UpperBound, GraphPair, Pair,
            "b_id(corona(G,H)) <= |V(G)| * b_id(H)",
            "b_id(G o H) <= |V(G)| b_id(H)"
        ),
    ]
}

pub fn find_claim(id: &str) -> Result<Claim, AuditError> {
    claims_catalog().into_iter().find(|c| c.id == id).ok_or_else(|| AuditError::UnknownClaim(id.to_string()))
}

/// Concrete parameters for one evaluation. Graphs travel as graph6 strings.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Binding {
    Mn { m: usize, n: usize },
    Qn { q: usize, n: usize },
    N { n: usize },
    GraphEdges { graph: String, edges: EdgeSet },
    Graph { graph: String },
    Pair { left: String, right: String },
}

impl Binding {
    pub fn graph(g: &Graph) -> Binding {
        Binding::Graph { graph: g6(g) }
    }

    pub fn graph_edges(g: &Graph, edges: impl IntoIterator<Item = Edge>) -> Binding {
        Binding::GraphEdges { graph: g6(g), edges: edges.into_iter().collect() }
    }

    pub fn pair(left: &Graph, right: &Graph) -> Binding {
        Binding::Pair { left: g6(left), right: g6(right) }
    }
}

impl fmt::Display for Binding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&serde_json::to_string(self).map_err(|_| fmt::Error)?)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Status {
    Confirmed,
    Refuted,
    NotApplicable,
    BudgetExceeded,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Confirmed => "CONFIRMED",
            Status::Refuted => "REFUTED",
            Status::NotApplicable => "NOT_APPLICABLE",
            Status::BudgetExceeded => "BUDGET_EXCEEDED",
        })
    }
}

/// A b_id certificate together with the graph it certifies.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertifiedBondage {
    pub role: String,
    pub graph: String,
    pub certificate: BondageCertificate,
}

/// A minimum independent dominating set together with its graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertifiedIds {
    pub role: String,
    pub graph: String,
    pub i_set: VertexSet,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub i_sets: Vec<CertifiedIds>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub certificates: Vec<CertifiedBondage>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClaimVerdict {
    pub claim_id: String,
    pub params: Binding,
    pub status: Status,
    /// The claimed value, or the claimed bound.
    pub expected: Option<i64>,
    pub computed: Option<i64>,
    pub witness: Option<Witness>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

fn g6(g: &Graph) -> String {
    write_graph6(g).expect("graphs are at most MAX_VERTICES wide")
}

/// Raised inside an evaluation when a solve runs out of budget.
struct OutOfBudget;

struct Eval {
    budget: Budget,
    witness: Witness,
    notes: Vec<String>,
}

struct Outcome {
    status: Status,
    expected: Option<i64>,
    computed: Option<i64>,
}

impl Outcome {
    fn equality(expected: usize, computed: usize) -> Outcome {
        Outcome {
            status: if expected == computed { Status::Confirmed } else { Status::Refuted },
            expected: Some(expected as i64),
            computed: Some(computed as i64),
        }
    }

    fn upper_bound(bound: i64, computed: usize) -> Outcome {
        Outcome {
            status: if computed as i64 <= bound { Status::Confirmed } else { Status::Refuted },
            expected: Some(bound),
            computed: Some(computed as i64),
        }
    }

    fn not_applicable() -> Outcome {
        Outcome { status: Status::NotApplicable, expected: None, computed: None }
    }
}

impl Eval {
    fn gi(&mut self, role: &str, g: &Graph) -> Result<usize, OutOfBudget> {
        let r = gamma_i(g, self.budget).map_err(|_| OutOfBudget)?;
        self.witness.i_sets.push(CertifiedIds { role: role.into(), graph: g6(g), i_set: r.witness });
        Ok(r.size)
    }

    /// `None` for edgeless graphs, where b_id is undefined.
    fn bid(&mut self, role: &str, g: &Graph) -> Result<Option<usize>, OutOfBudget> {
        match bondage_id(g, self.budget) {
            Ok(c) => {
                let k = c.k;
                self.witness.certificates.push(CertifiedBondage { role: role.into(), graph: g6(g), certificate: c });
                Ok(Some(k))
            }
            Err(BondageError::NoEdges) => Ok(None),
            Err(_) => Err(OutOfBudget),
        }
    }

    fn note(&mut self, s: String) {
        self.notes.push(s);
    }
}

fn out_of_scope(claim: &Claim, binding: &Binding, reason: impl Into<String>) -> AuditError {
    AuditError::BindingOutOfScope { claim: claim.id.into(), binding: binding.to_string(), reason: reason.into() }
}

/// Order of the largest graph a family claim builds at index `n`.
fn family_order(id: &str, n: usize) -> usize {
    match id {
        "FRIEND-GI" | "FRIEND-B" | "TRI-GI" | "TRI-B" => 2 * n + 1,
        "BOOK-GI" | "BOOK-B" => 2 * n + 2,
        "SQ-GI" | "PARA-B" | "ORTHO-B" => 3 * n + 1,
        "STAR-B" => n + 1,
        _ => n,
    }
}

fn family(name: FamilyName, n: usize) -> Graph {
    make_family(&FamilySpec::new(name, n)).expect("range checked by the claim scope")
}

/// Evaluates one claim at one binding.
pub fn check_claim(id: &str, binding: &Binding, budget: Budget) -> Result<ClaimVerdict, AuditError> {
    let claim = find_claim(id)?;
    let mut ev = Eval { budget, witness: Witness::default(), notes: Vec::new() };
    let outcome = evaluate(&claim, binding, &mut ev)?;
    let (status, expected, computed) = match outcome {
        Ok(o) => (o.status, o.expected, o.computed),
        Err(OutOfBudget) => (Status::BudgetExceeded, None, None),
    };
    let witness = matches!(status, Status::Confirmed | Status::Refuted).then_some(ev.witness);
    Ok(ClaimVerdict {
        claim_id: claim.id.to_string(),
        params: binding.clone(),
        status,
        expected,
        computed,
        witness,
        note: (!ev.notes.is_empty()).then(|| ev.notes.join("; ")),
    })
}

fn parse_bound_graph(claim: &Claim, binding: &Binding, text: &str) -> Result<Graph, AuditError> {
    parse_graph6(text).map_err(|e| out_of_scope(claim, binding, format!("bad graph6 {text:?}: {e}")))
}

fn evaluate(claim: &Claim, binding: &Binding, ev: &mut Eval) -> Result<Result<Outcome, OutOfBudget>, AuditError> {
    let shape_error = || out_of_scope(claim, binding, format!("expected parameters of shape {:?}", claim.shape));
    match (claim.shape, binding) {
        (Shape::N { min }, Binding::N { n }) => {
            if *n < min {
                return Err(out_of_scope(claim, binding, format!("n must be at least {min}")));
            }
            if family_order(claim.id, *n) > crate::graph::MAX_VERTICES {
                return Err(out_of_scope(claim, binding, "graph exceeds the supported width"));
            }
            Ok(family_n(claim.id, *n, ev))
        }
        (Shape::Mn, Binding::Mn { m, n }) => {
            if *m < 1 || *n < 1 || m + n > crate::graph::MAX_VERTICES {
                return Err(out_of_scope(claim, binding, "need m, n >= 1 and m + n within the supported width"));
            }
            let g = families::complete_bipartite(*m, *n).expect("checked");
            Ok(ev.bid("G", &g).map(|b| Outcome::equality(*m.min(n), b.expect("K_{m,n} has edges"))))
        }
        (Shape::Qn, Binding::Qn { q, n }) => {
            if !(4..=6).contains(q) || *n < 1 {
                return Err(out_of_scope(claim, binding, "need q in {4,5,6} and n >= 1"));
            }
            let g = make_family(&FamilySpec::gen_friendship(*q, *n))
                .map_err(|e| out_of_scope(claim, binding, e.to_string()))?;
            Ok(match claim.id {
                "FLOWER-GI" => ev.gi("G", &g).map(|v| Outcome::equality(n + 1, v)),
                _ => ev.bid("G", &g).map(|b| Outcome::equality(3, b.expect("flowers have edges"))),
            })
        }
        (Shape::Graph, Binding::Graph { graph }) => {
            let g = parse_bound_graph(claim, binding, graph)?;
            Ok(single_graph(claim.id, &g, ev))
        }
        (Shape::GraphEdges { s }, Binding::GraphEdges { graph, edges }) => {
            let g = parse_bound_graph(claim, binding, graph)?;
            if edges.len() != s {
                return Err(out_of_scope(claim, binding, format!("expected exactly {s} edge(s)")));
            }
            let reduced = g.remove_edges(edges).map_err(|e| out_of_scope(claim, binding, e.to_string()))?;
            Ok(edge_deletion(&g, &reduced, s, ev))
        }
        (Shape::Pair, Binding::Pair { left, right }) => {
            let g = parse_bound_graph(claim, binding, left)?;
            let h = parse_bound_graph(claim, binding, right)?;
            let product = match claim.id {
                "JOIN-GI" | "JOIN-B" => join(&g, &h).map_err(|e| e.to_string()),
                "LEX-GI" | "LEX-B" => lexicographic(&g, &h).map_err(|e| e.to_string()),
                _ if g.n() == 0 => return Ok(Ok(Outcome::not_applicable())),
                _ => corona(&g, &h).map_err(|e| e.to_string()),
            }
            .map_err(|e| out_of_scope(claim, binding, e))?;
            Ok(pair(claim.id, &g, &h, &product, ev))
        }
        _ => Err(shape_error()),
    }
}

fn family_n(id: &str, n: usize, ev: &mut Eval) -> Result<Outcome, OutOfBudget> {
    use FamilyName::*;
    let ceil = |a: usize, b: usize| a.div_ceil(b);
    let has_edges = "all families in scope have edges";
    Ok(match id {
        "STAR-B" => Outcome::equality(1, ev.bid("G", &family(Star, n))?.expect(has_edges)),
        "FRIEND-GI" => Outcome::equality(1, ev.gi("G", &family(Friendship, n))?),
        "BOOK-GI" => Outcome::equality(n, ev.gi("G", &family(Book, n))?),
        "FRIEND-B" => Outcome::equality(2, ev.bid("G", &family(Friendship, n))?.expect(has_edges)),
        "BOOK-B" => Outcome::equality(3, ev.bid("G", &family(Book, n))?.expect(has_edges)),
        "GAP" => {
            let kn = family(Complete, n);
            let star = family(Star, n - 1);
            let (gk, gs) = (ev.gi("K_n", &kn)?, ev.gi("K_{1,n-1}", &star)?);
            let bk = ev.bid("K_n", &kn)?.expect(has_edges);
            let bs = ev.bid("K_{1,n-1}", &star)?.expect(has_edges);
            ev.note(format!("b_id(K_n)={bk}, b_id(K_1,n-1)={bs}"));
            if gk != gs {
                ev.note(format!("gamma_i differs: {gk} vs {gs}"));
                Outcome {
                    status: Status::Refuted,
                    expected: Some(n as i64 - 2),
                    computed: Some(bk.abs_diff(bs) as i64),
                }
            } else {
                let o = Outcome::equality(n - 2, bk.abs_diff(bs));
                if o.status == Status::Refuted {
                    ev.note(
                        "construction value fails here; the unboundedness statement is not decided by one instance"
                            .into(),
                    );
                }
                o
            }
        }
        "PC-GI" => {
            let want = ceil(n, 3);
            let p = ev.gi("P_n", &family(Path, n))?;
            let c = if n >= 3 { Some(ev.gi("C_n", &family(Cycle, n))?) } else { None };
            ev.note(format!("path={p}, cycle={}", c.map_or("n/a".into(), |c| c.to_string())));
            let shown = if p != want { p } else { c.unwrap_or(p) };
            Outcome::equality(want, shown)
        }
        "PATH-B" => {
            let want = if n % 3 == 1 { 2 } else { 1 };
            Outcome::equality(want, ev.bid("G", &family(Path, n))?.expect(has_edges))
        }
        "CYCLE-B" => {
            let want = if n % 3 == 1 { 3 } else { 2 };
            Outcome::equality(want, ev.bid("G", &family(Cycle, n))?.expect(has_edges))
        }
        "KN-GI" => Outcome::equality(1, ev.gi("G", &family(Complete, n))?),
        "KN-B" => Outcome::equality(n - 1, ev.bid("G", &family(Complete, n))?.expect(has_edges)),
        "TRI-GI" => Outcome::equality(n, ev.gi("G", &family(TriChain, n))?),
        "TRI-B" => Outcome::equality(2, ev.bid("G", &family(TriChain, n))?.expect(has_edges)),
        "SQ-GI" => {
            let want = ceil(n, 2);
            let q = ev.gi("Q_n", &family(ParaSquareChain, n))?;
            let o = ev.gi("O_n", &family(OrthoSquareChain, n))?;
            ev.note(format!("para={q}, ortho={o}"));
            Outcome::equality(want, if q != want { q } else { o })
        }
        "PARA-B" => Outcome::equality(2, ev.bid("G", &family(ParaSquareChain, n))?.expect(has_edges)),
        "ORTHO-B" => Outcome::equality(2, ev.bid("G", &family(OrthoSquareChain, n))?.expect(has_edges)),
        other => unreachable!("{other} does not take a single family index"),
    })
}

fn single_graph(id: &str, g: &Graph, ev: &mut Eval) -> Result<Outcome, OutOfBudget> {
    let n = g.n();
    let Some(delta) = g.min_degree() else {
        return Ok(Outcome::not_applicable());
    };
    Ok(match id {
        "DELTA" => match ev.bid("G", g)? {
            Some(b) => Outcome::upper_bound(delta as i64 + 1, b),
            None => Outcome::not_applicable(),
        },
        "ORDER" => match ev.bid("G", g)? {
            Some(b) => {
                let gi = ev.gi("G", g)?;
                Outcome::upper_bound(n as i64 + 1 - 2 * gi as i64, b)
            }
            None => Outcome::not_applicable(),
        },
        "ORDER-COR" => match ev.bid("G", g)? {
            Some(b) if n >= 2 && b == n - 1 => Outcome::equality(1, ev.gi("G", g)?),
            _ => Outcome::not_applicable(),
        },
        "MINMAX" => {
            let gi = ev.gi("G", g)?;
            match ev.bid("G", g)? {
                Some(b) if gi >= 2 => Outcome::upper_bound((delta as i64 + 1).min(n as i64 - delta as i64 - 1), b),
                _ => Outcome::not_applicable(),
            }
        }
        "COMPL-1" | "NG" => {
            let co = g.complement();
            if g.m() == 0 || co.m() == 0 {
                ev.note("b_id undefined on an edgeless graph".into());
                return Ok(Outcome::not_applicable());
            }
            let (gi, gi_co) = (ev.gi("G", g)?, ev.gi("co-G", &co)?);
            let hypothesis = if id == "NG" { gi >= 2 && gi_co >= 2 } else { gi == 1 || gi_co == 1 };
            if !hypothesis {
                return Ok(Outcome::not_applicable());
            }
            let b = ev.bid("G", g)?.expect("has edges");
            let b_co = ev.bid("co-G", &co)?.expect("has edges");
            let bound = if id == "NG" {
                if n.is_multiple_of(2) {
                    n
                } else {
                    n - 1
                }
            } else {
                n + 1
            };
            Outcome::upper_bound(bound as i64, b + b_co)
        }
        other => unreachable!("{other} does not take a single graph"),
    })
}

fn edge_deletion(g: &Graph, reduced: &Graph, s: usize, ev: &mut Eval) -> Result<Outcome, OutOfBudget> {
    // s = 1: G - e needs an edge; s >= 2: s <= |E(G)| - 2.
    let applicable = if s == 1 { reduced.m() >= 1 } else { s + 2 <= g.m() };
    if !applicable {
        return Ok(Outcome::not_applicable());
    }
    let b = ev.bid("G", g)?.expect("has edges");
    let b_reduced = ev.bid("G-E'", reduced)?.expect("has edges");
    Ok(Outcome::upper_bound(b_reduced as i64 + s as i64, b))
}

fn pair(id: &str, g: &Graph, h: &Graph, product: &Graph, ev: &mut Eval) -> Result<Outcome, OutOfBudget> {
    if g.n() == 0 || h.n() == 0 {
        ev.note("an operand has no vertices".into());
        return Ok(Outcome::not_applicable());
    }
    let both_edges = g.m() > 0 && h.m() > 0;
    Ok(match id {
        "JOIN-GI" => {
            ev.note(if both_edges { "operands have edges" } else { "operands nonempty by vertices only" }.into());
            let (a, b) = (ev.gi("G", g)?, ev.gi("H", h)?);
            Outcome::equality(a.min(b), ev.gi("join", product)?)
        }
        "LEX-GI" => {
            let (a, b) = (ev.gi("G", g)?, ev.gi("H", h)?);
            Outcome::equality(a * b, ev.gi("lex", product)?)
        }
        "CORONA-GI" => {
            let b = ev.gi("H", h)?;
            Outcome::equality(g.n() * b, ev.gi("corona", product)?)
        }
        "JOIN-B" | "LEX-B" => {
            if !both_edges {
                ev.note("b_id undefined on an edgeless operand".into());
                return Ok(Outcome::not_applicable());
            }
            let a = ev.bid("G", g)?.expect("has edges");
            let b = ev.bid("H", h)?.expect("has edges");
            let role = if id == "JOIN-B" { "join" } else { "lex" };
            Outcome::equality(a.min(b), ev.bid(role, product)?.expect("product has edges"))
        }
        "CORONA-B" => match ev.bid("H", h)? {
            Some(b) => Outcome::upper_bound((g.n() * b) as i64, ev.bid("corona", product)?.expect("has edges")),
            None => {
                ev.note("b_id undefined on an edgeless H".into());
                Outcome::not_applicable()
            }
        },
        other => unreachable!("{other} does not take a graph pair"),
    })
}

/// Settings for [`run_audit`].
#[derive(Debug, Clone, Default)]
pub struct AuditConfig {
    /// Largest graph order swept; pair operands are capped separately.
    pub max_n: usize,
    /// Claim ids to run; empty means all.
    pub claims: Vec<String>,
    pub budget: Budget,
    /// Extra graphs for all-graph claims, typically larger than the built-in
    /// enumeration covers.
    pub corpus: Vec<Graph>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub confirmed: usize,
    pub refuted: usize,
    pub not_applicable: usize,
    pub budget_exceeded: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_counterexample: Option<Binding>,
}

impl Summary {
    fn add(&mut self, v: &ClaimVerdict) {
        match v.status {
            Status::Confirmed => self.confirmed += 1,
            Status::Refuted => {
                self.refuted += 1;
                if self.first_counterexample.is_none() {
                    self.first_counterexample = Some(v.params.clone());
                }
            }
            Status::NotApplicable => self.not_applicable += 1,
            Status::BudgetExceeded => self.budget_exceeded += 1,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ClaimReport {
    pub claim_id: String,
    pub kind: ClaimKind,
    pub scope: Scope,
    pub statement: String,
    pub anchor: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub remark: Option<String>,
    pub bindings: Vec<ClaimVerdict>,
    pub summary: Summary,
}

#[derive(Debug, Clone, Serialize)]
pub struct ReportHeader {
    pub max_n: usize,
    pub budget_nodes: u64,
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct AuditReport {
    pub header: ReportHeader,
    pub claims: Vec<ClaimReport>,
    pub totals: Summary,
}

impl AuditReport {
    pub fn claim(&self, id: &str) -> Option<&ClaimReport> {
        self.claims.iter().find(|c| c.claim_id == id)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// One line per claim.
    pub fn summary_lines(&self) -> Vec<String> {
        self.claims
            .iter()
            .map(|c| {
                let s = &c.summary;
                let mut line = format!(
                    "{:<11} confirmed={:<4} refuted={:<4} n/a={:<4} budget={:<3}",
                    c.claim_id, s.confirmed, s.refuted, s.not_applicable, s.budget_exceeded
                );
                if let Some(b) = &s.first_counterexample {
                    line.push_str(&format!(" first counterexample {b}"));
                }
                line
            })
            .collect()
    }
}

/// Largest operand orders for each pair claim (left, right).
fn pair_caps(id: &str) -> (usize, usize) {
    match id {
        "JOIN-GI" => (4, 4),
        "CORONA-GI" => (3, 4),
        _ => (3, 3),
    }
}

/// Bindings that are always evaluated, whatever `max_n` is.
fn pinned(id: &str) -> Vec<Binding> {
    let g = |name, n| family(name, n);
    let two_k2 = g(FamilyName::Complete, 2).disjoint_union(&g(FamilyName::Complete, 2)).expect("small");
    match id {
        "KN-B" => vec![Binding::N { n: 4 }, Binding::N { n: 5 }],
        "KMN-B" => vec![Binding::Mn { m: 2, n: 2 }],
        "FRIEND-B" | "TRI-GI" => vec![Binding::N { n: 2 }],
        "BOOK-B" => vec![Binding::N { n: 2 }],
        "SQ-GI" => vec![Binding::N { n: 1 }],
        "GAP" => vec![Binding::N { n: 3 }, Binding::N { n: 4 }],
        "ORDER" => vec![Binding::graph(&g(FamilyName::Cycle, 4))],
        "CORONA-GI" => vec![Binding::pair(&g(FamilyName::Complete, 2), &two_k2)],
        "JOIN-B" => vec![Binding::pair(&g(FamilyName::Path, 5), &g(FamilyName::Complete, 3))],
        _ => Vec::new(),
    }
}

fn representatives(lo: usize, hi: usize) -> Vec<Graph> {
    (lo..=hi.min(crate::census::BUILTIN_MAX_N))
        .flat_map(|n| unlabeled_graphs(n).expect("within builtin range").iter().cloned())
        .collect()
}

/// The sweep for one claim, pinned bindings first, duplicates removed.
pub fn bindings_for(claim: &Claim, max_n: usize, corpus: &[Graph]) -> Vec<Binding> {
    let mut out = pinned(claim.id);
    match claim.shape {
        Shape::N { min } => {
            out.extend((min..).take_while(|&n| family_order(claim.id, n) <= max_n).map(|n| Binding::N { n }));
        }
        Shape::Mn => {
            for m in 1..max_n {
                out.extend((1..=max_n - m).map(|n| Binding::Mn { m, n }));
            }
        }
        Shape::Qn => {
            for q in 4..=6 {
                out.extend((1..).take_while(|n| n * (q - 1) < max_n).map(|n| Binding::Qn { q, n }));
            }
        }
        Shape::Graph => {
            let graphs = representatives(1, max_n).into_iter().chain(corpus.iter().cloned());
            out.extend(graphs.map(|g| Binding::graph(&g)));
        }
        Shape::GraphEdges { s } => {
            let graphs = representatives(1, max_n.min(5)).into_iter().chain(corpus.iter().cloned());
            for g in graphs {
                let edges = g.edges();
                if s == 1 {
                    out.extend(edges.iter().map(|&e| Binding::graph_edges(&g, [e])));
                } else {
                    for i in 0..edges.len() {
                        for j in i + 1..edges.len() {
                            out.push(Binding::graph_edges(&g, [edges[i], edges[j]]));
                        }
                    }
                }
            }
        }
        Shape::Pair => {
            let (lcap, rcap) = pair_caps(claim.id);
            let left = representatives(1, lcap.min(max_n));
            let right = representatives(1, rcap.min(max_n));
            for g in &left {
                out.extend(right.iter().map(|h| Binding::pair(g, h)));
            }
        }
    }
    let mut seen = std::collections::HashSet::new();
    out.retain(|b| seen.insert(b.clone()));
    out
}

pub const REPORT_NOTES: [&str; 4] = [
    "all-graph claims range over one representative per isomorphism class (n <= 6) plus any supplied corpus",
    "chain families T_n, Q_n, O_n are indexed by their number of blocks",
    "the complement term written b_i in the complement-sum statement is read as b_id",
    "b_id counts removals that change gamma_i in either direction",
];

/// Evaluates every selected claim over its sweep. Bindings run on the
/// current rayon pool; the report order does not depend on the pool size.
pub fn run_audit(config: &AuditConfig) -> Result<AuditReport, AuditError> {
    let catalog = claims_catalog();
    let selected: Vec<Claim> = if config.claims.is_empty() {
        catalog
    } else {
        let by_id: BTreeMap<&str, &Claim> = catalog.iter().map(|c| (c.id, c)).collect();
        config
            .claims
            .iter()
            .map(|id| by_id.get(id.as_str()).map(|c| (*c).clone()).ok_or_else(|| AuditError::UnknownClaim(id.clone())))
            .collect::<Result<_, _>>()?
    };
    let mut totals = Summary::default();
    let mut claims = Vec::with_capacity(selected.len());
    for claim in selected {
        let bindings = bindings_for(&claim, config.max_n, &config.corpus);
        let verdicts: Vec<ClaimVerdict> =
            bindings.par_iter().map(|b| check_claim(claim.id, b, config.budget)).collect::<Result<_, _>>()?;
        let mut summary = Summary::default();
        for v in &verdicts {
            summary.add(v);
            totals.add(v);
        }
        claims.push(ClaimReport {
            claim_id: claim.id.into(),
            kind: claim.kind,
            scope: claim.scope,
            statement: claim.statement.into(),
            anchor: claim.anchor.into(),
            remark: claim.remark.map(String::from),
            bindings: verdicts,
            summary,
        });
    }
    totals.first_counterexample = None;
    Ok(AuditReport {
        header: ReportHeader {
            max_n: config.max_n,
            budget_nodes: config.budget.max_nodes,
            notes: REPORT_NOTES.iter().map(|s| s.to_string()).collect(),
        },
        claims,
        totals,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bondage::verify_certificate;

    const U: Budget = Budget::UNLIMITED;

    fn check(id: &str, b: Binding) -> ClaimVerdict {
        check_claim(id, &b, U).unwrap()
    }

    #[test]
    fn catalog_is_complete_and_unique() {
        let catalog = claims_catalog();
        assert!(catalog.len() >= 30);
        let ids: std::collections::HashSet<_> = catalog.iter().map(|c| c.id).collect();
        let anchors: std::collections::HashSet<_> = catalog.iter().map(|c| c.anchor).collect();
        assert_eq!(ids.len(), catalog.len());
        assert_eq!(anchors.len(), catalog.len());
        let order = find_claim("ORDER").unwrap();
        assert_eq!((order.kind, order.scope), (ClaimKind::UpperBound, Scope::AllGraphs));
        assert!(matches!(find_claim("NOPE"), Err(AuditError::UnknownClaim(_))));
    }

    #[test]
    fn verdict_examples() {
        let v = check("PC-GI", Binding::N { n: 9 });
        assert_eq!((v.status, v.computed), (Status::Confirmed, Some(3)));

        let v = check("KN-B", Binding::N { n: 4 });
        assert_eq!((v.status, v.expected, v.computed), (Status::Refuted, Some(3), Some(2)));
        let cert = &v.witness.unwrap().certificates[0].certificate;
        assert_eq!(cert.removed, [(0, 1), (2, 3)].map(|(a, b)| Edge::new(a, b).unwrap()).into_iter().collect());

        let c4 = family(FamilyName::Cycle, 4);
        let v = check("ORDER", Binding::graph(&c4));
        assert_eq!((v.status, v.expected, v.computed), (Status::Refuted, Some(1), Some(3)));

        let v = check("FRIEND-B", Binding::N { n: 1 });
        assert_eq!((v.status, v.computed), (Status::Confirmed, Some(2)));
        let v = check("FRIEND-B", Binding::N { n: 2 });
        assert_eq!((v.status, v.expected, v.computed), (Status::Refuted, Some(2), Some(1)));

        let v = check("COMPL-1", Binding::graph(&family(FamilyName::Complete, 5)));
        assert_eq!(v.status, Status::NotApplicable);
        assert!(v.witness.is_none());
    }

    #[test]
    fn hypotheses_give_not_applicable() {
        // K_4 has gamma_i = 1, outside MINMAX's hypothesis.
        let v = check("MINMAX", Binding::graph(&family(FamilyName::Complete, 4)));
        assert_eq!(v.status, Status::NotApplicable);
        let v = check("JOIN-B", Binding::pair(&Graph::empty(2).unwrap(), &family(FamilyName::Path, 3)));
        assert_eq!(v.status, Status::NotApplicable);
        let v = check("ORDER-COR", Binding::graph(&family(FamilyName::Path, 5)));
        assert_eq!(v.status, Status::NotApplicable);
        let v = check("ORDER-COR", Binding::graph(&family(FamilyName::Cycle, 4)));
        assert_eq!((v.status, v.computed), (Status::Refuted, Some(2)));
        let p3 = family(FamilyName::Path, 3);
        let v = check("EDGE-DEL", Binding::graph_edges(&family(FamilyName::Path, 2), [Edge::new(0, 1).unwrap()]));
        assert_eq!(v.status, Status::NotApplicable);
        let v = check("EDGE-DEL-S", Binding::graph_edges(&p3, p3.edges()));
        assert_eq!(v.status, Status::NotApplicable);
    }

    #[test]
    fn out_of_scope_bindings() {
        let err = |id: &str, b: Binding| check_claim(id, &b, U).unwrap_err();
        assert!(matches!(err("BOOK-B", Binding::N { n: 1 }), AuditError::BindingOutOfScope { .. }));
        assert!(matches!(err("FLOWER-GI", Binding::Qn { q: 3, n: 2 }), AuditError::BindingOutOfScope { .. }));
        assert!(matches!(err("ORDER", Binding::N { n: 4 }), AuditError::BindingOutOfScope { .. }));
        let p3 = family(FamilyName::Path, 3);
        let missing = Binding::graph_edges(&p3, [Edge::new(0, 2).unwrap()]);
        assert!(matches!(err("EDGE-DEL", missing), AuditError::BindingOutOfScope { .. }));
        assert!(matches!(err("DELTA", Binding::Graph { graph: "C~x".into() }), AuditError::BindingOutOfScope { .. }));
        assert!(matches!(err("XYZ", Binding::N { n: 1 }), AuditError::UnknownClaim(_)));
    }

    #[test]
    fn budget_verdict() {
        let v = check_claim("CYCLE-B", &Binding::N { n: 7 }, Budget::nodes(2)).unwrap();
        assert_eq!(v.status, Status::BudgetExceeded);
        assert!(v.witness.is_none());
    }

    #[test]
    fn binding_json_round_trip() {
        let c4 = family(FamilyName::Cycle, 4);
        for b in [
            Binding::N { n: 3 },
            Binding::Mn { m: 2, n: 3 },
            Binding::Qn { q: 4, n: 2 },
            Binding::graph(&c4),
            Binding::graph_edges(&c4, [Edge::new(0, 1).unwrap()]),
            Binding::pair(&c4, &c4),
        ] {
            let json = serde_json::to_string(&b).unwrap();
            assert_eq!(serde_json::from_str::<Binding>(&json).unwrap(), b, "{json}");
        }
        assert_eq!(serde_json::to_string(&Binding::Mn { m: 2, n: 3 }).unwrap(), r#"{"m":2,"n":3}"#);
    }

    #[test]
    fn refutations_replay() {
        let report = run_audit(&AuditConfig { max_n: 5, ..Default::default() }).unwrap();
        for c in &report.claims {
            for v in c.bindings.iter().filter(|v| v.status == Status::Refuted) {
                let again = check_claim(&v.claim_id, &v.params, U).unwrap();
                assert_eq!(&again, v);
                for cert in &v.witness.as_ref().unwrap().certificates {
                    let g = parse_graph6(&cert.graph).unwrap();
                    assert!(verify_certificate(&g, &cert.certificate).unwrap(), "{}", v.claim_id);
                }
                for ids in &v.witness.as_ref().unwrap().i_sets {
                    let g = parse_graph6(&ids.graph).unwrap();
                    assert_eq!(crate::solvers::gamma_i_oracle(&g).size, ids.i_set.len());
                }
            }
        }
        let edge_del = report.claim("EDGE-DEL").unwrap();
        assert_eq!(edge_del.summary.refuted, 0);
        assert!(edge_del.summary.confirmed > 0);
    }
}
