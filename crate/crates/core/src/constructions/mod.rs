//! Pfaffian pairs and parities built from graphs, hypergraphs and skew matrices.

mod delta;
mod graph;
mod hypertree;
mod matching;
mod paths;
mod trees;

pub use delta::{
    bar, delta_matroid_pair, euler_tour_matrix, feasible_set_of_base, is_principally_unimodular, EulerSystem,
};
pub use graph::{Dsu, Edge, Graph, Hyperedge, Hypergraph3, TerminalSpec, DiGraph, UGraph};
pub use hypertree::{hypertree_parity, hypertree_sign, lambda_grid, lambda_minor};
pub use matching::{
    bipartite_matching_pair, bipartite_matching_sign, find_pfaffian_orientation, general_matching_parity, matching_sign, reorient,
    skew_adjacency, Bipartition,
};
pub use paths::{
    dag_st_pair, lgv_bordered, lgv_matrix, pairing_sign, path_sign, stu_parity, undirected_st_pair, DagReduction,
    PreparedGraph, StReduction, StuReduction,
};
pub use trees::{arborescence_pair, head_matrix, spanning_tree_pair};
