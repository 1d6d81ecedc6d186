//! Semi-transitive orientations of directed split graphs and the index of
//! semi-transitivity of 2-D morphisms over {-1, 0, 1}.
//!
//! A split graph is given by an `m x n` matrix `M`: clique vertices `1..=n`
//! form a transitive tournament, and row `p` is an independent vertex
//! `n + p` with entry `1` for an edge from the clique, `-1` for an edge into
//! it and `0` for no edge. [`check_split`] decides semi-transitivity from
//! the rows alone; [`semi_transitive_oracle`] decides it by path search on
//! any small digraph.

pub mod checker;
pub mod classify;
pub mod graph;
pub mod ist;
pub mod matrix;
pub mod morphism;
pub mod oracle;
pub mod rle;
pub mod sweep;
pub mod trit;
pub mod verdict;

pub use checker::{check_split, check_split_rows, check_split_set, reduce_matrix, theorem_check, theorem_check_unnormalized, PairRule, Reduction};
pub use classify::{classify_row, RowClassification, RowForm};
pub use graph::{export_dot, graph_from_lower, lower_from_digraph, split_adjacency, split_graph, Digraph, GraphError, LowerTriangular};
pub use ist::{classify_ist, classify_ist_with, cross_validate, empirical_ist, Branch, Condition, Condition3Reading, Empirical, IstResult, IstVerdict};
pub use matrix::{parse_matrix, MatrixError, ParseError, TritMatrix};
pub use morphism::{check_iteration, iterate, pattern_step, patterns_at, substitute, Budget, MorphismError, MorphismTriple, PatternSet};
pub use oracle::{find_cycle, semi_transitive_oracle, semi_transitive_oracle_with, OracleError, OracleLimits};
pub use rle::RleRow;
pub use sweep::{sweep, SweepConfig, SweepSummary};
pub use trit::Trit;
pub use verdict::{Verdict, Witness};
