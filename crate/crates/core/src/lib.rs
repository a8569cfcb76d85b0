//! fracture: a spectral toolkit for probing how quickly a network's largest
//! connected component collapses under targeted node removals.
//!
//! The library provides
//!
//! - simple undirected graphs with stable original ids, edge-list and Pajek
//!   readers, and a breadth-first component oracle ([`graph`]);
//! - exact integer matrix constructions: Laplacian, signless Laplacian, the
//!   degree-bordered signless Laplacian, and the signed incidence
//!   factorization ([`matrix`]);
//! - null-space extraction and the greedy search for the sparsest binary
//!   basis, whose columns indicate connected components and whose matrix
//!   one-norm is the largest component size ([`nullspace`]);
//! - dense and iterative symmetric eigensolvers for the Fiedler pair and
//!   for the largest eigenvalue behind the edge bound ([`spectral`]);
//! - degree and betweenness baselines ([`centrality`]);
//! - the greedy spectral-cut removal strategy and its baselines
//!   ([`attack`]), CSV trace emission ([`trace`]), and a verification
//!   harness that cross-checks the identities on arbitrary inputs
//!   ([`verify`]).

pub mod attack;
pub mod centrality;
pub mod error;
pub mod graph;
pub mod matrix;
pub mod nullspace;
pub mod parallel;
pub mod spectral;
pub mod trace;
pub mod verify;

pub use attack::{
    greedy_centrality_removal, greedy_spectral_removal, random_removal, spectral_cut,
    AttackOptions, AttackStep, AttackTrace, CutPartition, EvalMode, Strategy,
};
pub use centrality::{betweenness, degrees, CentralityKind, CentralityScores};
pub use error::{Error, Result};
pub use graph::{
    parse_edge_list, parse_pajek, read_graph, Component, ComponentList, FileFormat, Graph, NodeId,
};
pub use matrix::{
    augmented_signless, incidence, laplacian, nuclear_norm_identity, signless_laplacian,
    IncidenceMatrix, SymmetricMatrix, DENSE_LIMIT,
};
pub use nullspace::{
    default_zero_tolerance, largest_component_by_basis, matrix_one_norm, null_space_basis,
    null_space_basis_with_cap, sparsest_binary_basis, sparsest_binary_basis_traced,
    BasisSearchStep, BasisSearchTrace, ComponentBasis, NullBasis, FAITHFUL_DENSE_CAP,
};
pub use spectral::{
    default_tol, edge_upper_bound, fiedler, lambda_max, symmetric_eigen, SpectralResult,
};
pub use trace::{parse_csv, write_csv, TraceRecord, TraceRow, CSV_HEADER};
pub use verify::{run_verification, CheckOutcome, VerifyOptions, VerifyReport};
