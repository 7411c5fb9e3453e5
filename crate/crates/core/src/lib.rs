//! Multiplex congruence networks over the natural numbers.
//!
//! A congruence layer `G(r, N)` has nodes `r+1..=N` and a directed edge
//! `i -> j` whenever `i < j` and `j ≡ r (mod i)`. Layers sharing the same
//! ceiling `N` form a multiplex network. This crate builds those layers,
//! measures their out-degree statistics against the closed-form laws,
//! computes minimum driver-node sets (rank over a prime field and maximum
//! matching), simulates node-removal attacks against a static-model
//! scale-free baseline, and solves simultaneous congruences by searching
//! for common successors across layers.

pub mod control;
pub mod crt;
mod error;
pub mod field;
pub mod graph;
pub mod io;
pub mod layer;
pub mod matching;
pub mod robustness;
pub mod seed;

pub use control::{
    coupling_matrix, min_drivers_exact, min_drivers_matching, rank, verify_ssc, ControlMethod,
    ControlReport, CouplingMatrix, SscReport, Weighting,
};
pub use crt::{
    solve_garner, solve_graphical, successor_set, validate_system, Congruence, CongruenceSystem,
    CrtMethod, CrtSolution,
};
pub use error::{Error, Result};
pub use graph::Digraph;
pub use layer::{
    average_degree, build_layer, empirical_distribution, extract_chains, out_degree,
    theoretical_average_degree, theoretical_pk, Chain, DegreeHistogram, LayerSpec,
    MultiplexNetwork,
};
pub use robustness::{
    attack_curve, generate_static_sf, remove_nodes, AttackCurve, AttackPoint, AttackStrategy,
    StaticModelSpec,
};
