//! Exact independent domination (γ_i) and independent domination bondage
//! (b_id) numbers for small simple graphs, the graph families and products
//! they are usually studied on, and an audit harness that checks published
//! formulas about them against exact values.

pub mod audit;
pub mod bondage;
pub mod census;
pub mod families;
pub mod graph;
pub mod io;
pub mod products;
pub mod solvers;

pub use bondage::{
    bondage_id, bondage_id_with, verify_certificate, BondageCertificate, BondageError, BondageOptions, Direction,
};
pub use graph::{Edge, EdgeSet, Graph, GraphError, VertexSet, MAX_VERTICES};
pub use solvers::{domination_number, gamma_i, gamma_i_oracle, independence_number, Budget, IdsResult, SolveError};
