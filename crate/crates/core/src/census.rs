//! Invariant tables over graph collections: every labeled graph of a small
//! order, isomorphism-class representatives, or an external graph6 stream.

use std::collections::HashSet;
use std::sync::OnceLock;

use rayon::prelude::*;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::bondage::{bondage_id_with, BondageError, BondageOptions};
use crate::graph::{EdgeSet, Graph};
use crate::io::{parse_graph6, write_graph6, Graph6Error};
use crate::solvers::{domination_number, gamma_i, independence_number, Budget};

/// Largest order the built-in enumerator will produce.
pub const BUILTIN_MAX_N: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CensusError {
    #[error("built-in enumeration supports n <= {BUILTIN_MAX_N}, got {0}; supply a graph6 file instead")]
    TooLargeForBuiltin(usize),
    #[error("line {line}: {source}")]
    Graph6 { line: usize, source: Graph6Error },
}

/// Every labeled graph on `n` vertices, ordered by graph6 payload bits.
pub fn labeled_graphs(n: usize) -> Result<Vec<Graph>, CensusError> {
    if n > BUILTIN_MAX_N {
        return Err(CensusError::TooLargeForBuiltin(n));
    }
    let pairs = n * n.saturating_sub(1) / 2;
    Ok((0..1u64 << pairs).map(|code| Graph::from_triangle_code(n, code)).collect())
}

/// One graph per isomorphism class on `n` vertices: the labeling with the
/// least triangle code, in increasing code order.
pub fn unlabeled_graphs(n: usize) -> Result<&'static [Graph], CensusError> {
    static CLASSES: [OnceLock<Vec<Graph>>; BUILTIN_MAX_N + 1] = [const { OnceLock::new() }; BUILTIN_MAX_N + 1];
    if n > BUILTIN_MAX_N {
        return Err(CensusError::TooLargeForBuiltin(n));
    }
    Ok(CLASSES[n].get_or_init(|| {
        let pairs = n * n.saturating_sub(1) / 2;
        (0..1u64 << pairs)
            .into_par_iter()
            .filter_map(|code| {
                let g = Graph::from_triangle_code(n, code);
                (g.canonical_code() == code).then_some(g)
            })
            .collect()
    }))
}

/// Keeps the first graph of every isomorphism class, preserving order.
pub fn dedup_isomorphic(graphs: Vec<Graph>) -> Vec<Graph> {
    let codes: Vec<(usize, u64)> = graphs.par_iter().map(|g| (g.n(), g.canonical_code())).collect();
    let mut seen = HashSet::new();
    graphs.into_iter().zip(codes).filter_map(|(g, key)| seen.insert(key).then_some(g)).collect()
}

/// Reads one graph6 string per non-empty line.
pub fn read_graph6_stream(text: &str) -> Result<Vec<Graph>, CensusError> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| parse_graph6(l.trim()).map_err(|source| CensusError::Graph6 { line: i + 1, source }))
        .collect()
}

/// Which invariants to compute per record.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct InvariantSelection {
    pub gamma: bool,
    pub gamma_i: bool,
    pub alpha: bool,
    pub b_id: bool,
}

impl Default for InvariantSelection {
    fn default() -> Self {
        InvariantSelection { gamma: true, gamma_i: true, alpha: true, b_id: true }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct CensusOptions {
    pub select: InvariantSelection,
    pub budget: Budget,
    pub use_cache: bool,
}

/// b_id column: a number, the `undef` sentinel for edgeless graphs, or
/// unknown (not selected or out of budget, serialized as null).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BondageValue {
    Value(usize),
    Undef,
    Unknown,
}

impl BondageValue {
    pub fn value(&self) -> Option<usize> {
        match self {
            BondageValue::Value(v) => Some(*v),
            _ => None,
        }
    }

    fn cell(&self) -> String {
        match self {
            BondageValue::Value(v) => v.to_string(),
            BondageValue::Undef => "undef".into(),
            BondageValue::Unknown => String::new(),
        }
    }
}

impl Serialize for BondageValue {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            BondageValue::Value(v) => s.serialize_u64(*v as u64),
            BondageValue::Undef => s.serialize_str("undef"),
            BondageValue::Unknown => s.serialize_none(),
        }
    }
}

impl<'de> Deserialize<'de> for BondageValue {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Value(usize),
            Text(String),
            Null(()),
        }
        match Raw::deserialize(d)? {
            Raw::Value(v) => Ok(BondageValue::Value(v)),
            Raw::Text(t) if t == "undef" => Ok(BondageValue::Undef),
            Raw::Text(t) => Err(D::Error::custom(format!("unexpected b_id {t:?}"))),
            Raw::Null(()) => Ok(BondageValue::Unknown),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusRecord {
    pub graph6: String,
    pub n: usize,
    pub m: usize,
    pub delta_min: Option<usize>,
    pub gamma: Option<usize>,
    pub gamma_i: Option<usize>,
    pub alpha: Option<usize>,
    pub b_id: BondageValue,
    pub bondage_witness: Option<EdgeSet>,
    /// Set when some invariant ran out of budget.
    pub error: Option<String>,
}

impl CensusRecord {
    pub fn budget_exceeded(&self) -> bool {
        self.error.is_some()
    }
}

pub fn census_record(g: &Graph, opts: &CensusOptions) -> CensusRecord {
    let mut errors = Vec::new();
    let mut run = |selected: bool, name: &str, f: &dyn Fn() -> Result<usize, String>| {
        if !selected {
            return None;
        }
        f().map_err(|e| errors.push(format!("{name}: {e}"))).ok()
    };
    let gamma = run(opts.select.gamma, "gamma", &|| {
        domination_number(g, opts.budget).map(|r| r.size).map_err(|e| e.to_string())
    });
    let gamma_i_value =
        run(opts.select.gamma_i, "gamma_i", &|| gamma_i(g, opts.budget).map(|r| r.size).map_err(|e| e.to_string()));
    let alpha = run(opts.select.alpha, "alpha", &|| {
        independence_number(g, opts.budget).map(|r| r.size).map_err(|e| e.to_string())
    });
    let (b_id, bondage_witness) = if !opts.select.b_id {
        (BondageValue::Unknown, None)
    } else {
        let bopts = BondageOptions { budget: opts.budget, parallel: false, use_cache: opts.use_cache };
        match bondage_id_with(g, &bopts) {
            Ok(c) => (BondageValue::Value(c.k), Some(c.removed)),
            Err(BondageError::NoEdges) => (BondageValue::Undef, None),
            Err(e) => {
                errors.push(format!("b_id: {e}"));
                (BondageValue::Unknown, None)
            }
        }
    };
    CensusRecord {
        graph6: write_graph6(g).expect("graph width is bounded"),
        n: g.n(),
        m: g.m(),
        delta_min: g.min_degree(),
        gamma,
        gamma_i: gamma_i_value,
        alpha,
        b_id,
        bondage_witness,
        error: (!errors.is_empty()).then(|| errors.join("; ")),
    }
}

/// One record per graph, in input order; work is spread over the current
/// rayon pool.
pub fn census(graphs: &[Graph], opts: &CensusOptions) -> Vec<CensusRecord> {
    graphs.par_iter().map(|g| census_record(g, opts)).collect()
}

pub fn records_to_json(records: &[CensusRecord]) -> String {
    let mut out = serde_json::to_string_pretty(records).expect("records serialize");
    out.push('\n');
    out
}

pub const CSV_HEADER: [&str; 10] =
    ["graph6", "n", "m", "delta_min", "gamma", "gamma_i", "alpha", "b_id", "bondage_witness", "error"];

pub fn records_to_csv(records: &[CensusRecord]) -> String {
    let opt = |v: Option<usize>| v.map(|x| x.to_string()).unwrap_or_default();
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(CSV_HEADER).expect("in-memory write");
    for r in records {
        let witness = r
            .bondage_witness
            .as_ref()
            .map(|es| es.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(" "))
            .unwrap_or_default();
        w.write_record([
            r.graph6.clone(),
            r.n.to_string(),
            r.m.to_string(),
            opt(r.delta_min),
            opt(r.gamma),
            opt(r.gamma_i),
            opt(r.alpha),
            r.b_id.cell(),
            witness,
            r.error.clone().unwrap_or_default(),
        ])
        .expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
}
