//! Binary graph operations. Pair vertices `(a, x)` with `a` in the left
//! factor are labeled `a * n_right + x` (row-major).

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{low_mask, Graph, GraphError, MAX_VERTICES};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProductError {
    #[error("corona needs a base graph with at least one vertex")]
    EmptyBase,
    #[error("unknown product {0:?}")]
    UnknownOp(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ProductOp {
    Join,
    Lex,
    Corona,
    Cartesian,
}

impl ProductOp {
    pub fn apply(self, g: &Graph, h: &Graph) -> Result<Graph, ProductError> {
        match self {
            ProductOp::Join => Ok(join(g, h)?),
            ProductOp::Lex => Ok(lexicographic(g, h)?),
            ProductOp::Corona => corona(g, h),
            ProductOp::Cartesian => Ok(cartesian(g, h)?),
        }
    }
}

impl fmt::Display for ProductOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ProductOp::Join => "join",
            ProductOp::Lex => "lex",
            ProductOp::Corona => "corona",
            ProductOp::Cartesian => "cartesian",
        })
    }
}

impl FromStr for ProductOp {
    type Err = ProductError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "join" => Ok(ProductOp::Join),
            "lex" | "lexicographic" => Ok(ProductOp::Lex),
            "corona" => Ok(ProductOp::Corona),
            "cartesian" => Ok(ProductOp::Cartesian),
            other => Err(ProductError::UnknownOp(other.to_string())),
        }
    }
}

fn check_order(n: usize) -> Result<(), GraphError> {
    if n > MAX_VERTICES {
        Err(GraphError::TooManyVertices(n))
    } else {
        Ok(())
    }
}

/// Disjoint union plus every edge between the two sides.
pub fn join(g: &Graph, h: &Graph) -> Result<Graph, GraphError> {
    let u = g.disjoint_union(h)?;
    let (ng, n) = (g.n(), u.n());
    let left = low_mask(ng);
    let right = low_mask(n) & !left;
    let rows = (0..n).map(|v| u.rows()[v] | if v < ng { right } else { left }).collect();
    Ok(Graph::from_rows(n, rows))
}

/// `(a,x) ~ (b,y)` iff `a ~ b`, or `a == b` and `x ~ y`.
pub fn lexicographic(g: &Graph, h: &Graph) -> Result<Graph, GraphError> {
    let (ng, nh) = (g.n(), h.n());
    check_order(ng * nh)?;
    let block = low_mask(nh);
    let mut rows = vec![0u64; ng * nh];
    for a in 0..ng {
        let mut across = 0u64;
        for b in g.neighbors(a).iter() {
            across |= block << (b * nh);
        }
        for x in 0..nh {
            rows[a * nh + x] = across | h.rows()[x] << (a * nh);
        }
    }
    Ok(Graph::from_rows(ng * nh, rows))
}

/// One copy of `h` per vertex `v` of `g`, with `v` joined to its copy.
/// Vertex `v` is labeled `v * (1 + n_h)` and its copy follows it.
pub fn corona(g: &Graph, h: &Graph) -> Result<Graph, ProductError> {
    let (ng, nh) = (g.n(), h.n());
    if ng == 0 {
        return Err(ProductError::EmptyBase);
    }
    let stride = nh + 1;
    check_order(ng * stride)?;
    let mut rows = vec![0u64; ng * stride];
    for v in 0..ng {
        let base = v * stride;
        let copy = low_mask(nh) << (base + 1);
        rows[base] = copy;
        for w in g.neighbors(v).iter() {
            rows[base] |= 1u64 << (w * stride);
        }
        for x in 0..nh {
            rows[base + 1 + x] = h.rows()[x] << (base + 1) | 1u64 << base;
        }
    }
    Ok(Graph::from_rows(ng * stride, rows))
}

/// `(a,x) ~ (b,y)` iff exactly one coordinate is adjacent and the other equal.
pub fn cartesian(g: &Graph, h: &Graph) -> Result<Graph, GraphError> {
    let (ng, nh) = (g.n(), h.n());
    check_order(ng * nh)?;
    let mut rows = vec![0u64; ng * nh];
    for a in 0..ng {
        for x in 0..nh {
            let mut row = h.rows()[x] << (a * nh);
            for b in g.neighbors(a).iter() {
                row |= 1u64 << (b * nh + x);
            }
            rows[a * nh + x] = row;
        }
    }
    Ok(Graph::from_rows(ng * nh, rows))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{complete, complete_bipartite, cycle, make_family, path, FamilyName, FamilySpec};

    fn k(n: usize) -> Graph {
        complete(n).unwrap()
    }

    fn p(n: usize) -> Graph {
        path(n).unwrap()
    }

    fn two_k2() -> Graph {
        k(2).disjoint_union(&k(2)).unwrap()
    }

    /// Product adjacency straight from the definitions, pair by pair.
    fn brute(op: ProductOp, g: &Graph, h: &Graph) -> Graph {
        let (ng, nh) = (g.n(), h.n());
        let mut edges = Vec::new();
        match op {
            ProductOp::Join => {
                edges.extend(g.edges().iter().map(|e| (e.u(), e.v())));
                edges.extend(h.edges().iter().map(|e| (e.u() + ng, e.v() + ng)));
                edges.extend((0..ng).flat_map(|a| (0..nh).map(move |x| (a, ng + x))));
                return Graph::build(ng + nh, edges).unwrap();
            }
            ProductOp::Corona => {
                let s = nh + 1;
                edges.extend(g.edges().iter().map(|e| (e.u() * s, e.v() * s)));
                for v in 0..ng {
                    edges.extend((0..nh).map(|x| (v * s, v * s + 1 + x)));
                    edges.extend(h.edges().iter().map(|e| (v * s + 1 + e.u(), v * s + 1 + e.v())));
                }
                return Graph::build(ng * s, edges).unwrap();
            }
            _ => {}
        }
        let verts: Vec<(usize, usize)> = (0..ng).flat_map(|a| (0..nh).map(move |x| (a, x))).collect();
        for (i, &(a, x)) in verts.iter().enumerate() {
            for &(b, y) in &verts[i + 1..] {
                let adj = match op {
                    ProductOp::Lex => g.has_edge(a, b) || (a == b && h.has_edge(x, y)),
                    _ => (a == b && h.has_edge(x, y)) || (x == y && g.has_edge(a, b)),
                };
                if adj {
                    edges.push((a * nh + x, b * nh + y));
                }
            }
        }
        Graph::build(ng * nh, edges).unwrap()
    }

    fn small_inputs() -> Vec<Graph> {
        let mut out = vec![Graph::empty(1).unwrap(), Graph::empty(2).unwrap(), Graph::empty(3).unwrap(), two_k2()];
        out.extend((1..=5).map(k));
        out.extend((2..=5).map(p));
        out.extend((3..=5).map(|n| cycle(n).unwrap()));
        out.extend([
            complete_bipartite(1, 3).unwrap(),
            complete_bipartite(2, 2).unwrap(),
            complete_bipartite(2, 3).unwrap(),
        ]);
        out.push(make_family(&FamilySpec::new(FamilyName::Friendship, 2)).unwrap());
        out
    }

    #[test]
    fn join_examples() {
        let wheel = join(&k(1), &cycle(4).unwrap()).unwrap();
        assert_eq!((wheel.n(), wheel.m()), (5, 8));
        assert_eq!(join(&k(1), &k(1)).unwrap(), k(2));
        assert_eq!(join(&p(3), &p(3)).unwrap().m(), 13);
    }

    #[test]
    fn lexicographic_examples() {
        assert_eq!(lexicographic(&p(2), &p(2)).unwrap(), k(4));
        for g in small_inputs() {
            assert_eq!(lexicographic(&g, &k(1)).unwrap(), g);
        }
        let g = lexicographic(&p(3), &k(2)).unwrap();
        assert_eq!((g.n(), g.m()), (6, 11));
    }

    #[test]
    fn corona_examples() {
        let g = corona(&k(2), &k(1)).unwrap();
        assert!(g.is_isomorphic(&p(4)));
        let wheel = corona(&k(1), &cycle(4).unwrap()).unwrap();
        assert!(wheel.is_isomorphic(&join(&k(1), &cycle(4).unwrap()).unwrap()));
        let g = corona(&k(2), &two_k2()).unwrap();
        assert_eq!((g.n(), g.m()), (10, 13));
        assert_eq!(corona(&Graph::empty(0).unwrap(), &k(2)), Err(ProductError::EmptyBase));
    }

    #[test]
    fn cartesian_examples() {
        let book2 = make_family(&FamilySpec::new(FamilyName::Book, 2)).unwrap();
        let star2 = complete_bipartite(1, 2).unwrap();
        assert!(cartesian(&star2, &p(2)).unwrap().is_isomorphic(&book2));
        assert_eq!(cartesian(&p(2), &p(2)).unwrap(), Graph::build(4, [(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap());
        assert_eq!(cartesian(&k(3), &k(1)).unwrap(), k(3));
    }

    #[test]
    fn matches_definitions_and_edge_counts() {
        let inputs = small_inputs();
        for g in &inputs {
            for h in &inputs {
                let (ng, nh, mg, mh) = (g.n(), h.n(), g.m(), h.m());
                let j = join(g, h).unwrap();
                assert_eq!(j, brute(ProductOp::Join, g, h));
                assert_eq!(j.m(), mg + mh + ng * nh);
                let l = lexicographic(g, h).unwrap();
                assert_eq!(l, brute(ProductOp::Lex, g, h));
                assert_eq!(l.m(), mg * nh * nh + ng * mh);
                let c = corona(g, h).unwrap();
                assert_eq!(c, brute(ProductOp::Corona, g, h));
                assert_eq!((c.n(), c.m()), (ng * (1 + nh), mg + ng * (mh + nh)));
                let x = cartesian(g, h).unwrap();
                assert_eq!(x, brute(ProductOp::Cartesian, g, h));
                assert_eq!(x.m(), mg * nh + ng * mh);
            }
        }
    }

    #[test]
    fn join_commutes_up_to_isomorphism() {
        let inputs: Vec<Graph> = small_inputs().into_iter().filter(|g| g.n() <= 4).collect();
        for g in &inputs {
            for h in &inputs {
                assert!(join(g, h).unwrap().is_isomorphic(&join(h, g).unwrap()));
            }
        }
    }

    #[test]
    fn lexicographic_is_not_commutative() {
        let g = p(2);
        let h = cycle(3).unwrap().disjoint_union(&k(1)).unwrap();
        let degs = |x: &Graph| {
            let mut d: Vec<usize> = (0..x.n()).map(|v| x.degree(v)).collect();
            d.sort_unstable();
            d
        };
        assert_ne!(degs(&lexicographic(&g, &h).unwrap()), degs(&lexicographic(&h, &g).unwrap()));
    }

    #[test]
    fn parses_op_names() {
        for op in [ProductOp::Join, ProductOp::Lex, ProductOp::Corona, ProductOp::Cartesian] {
            assert_eq!(op.to_string().parse::<ProductOp>().unwrap(), op);
        }
        assert!("tensor".parse::<ProductOp>().is_err());
        assert!(matches!(lexicographic(&k(9), &k(8)), Err(GraphError::TooManyVertices(72))));
    }
}
