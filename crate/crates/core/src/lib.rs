//! Analysis of line patterns in finitely generated free groups.
//!
//! A line pattern is a finite union of conjugacy classes of maximal cyclic
//! subgroups, viewed as a group-invariant family of bi-infinite geodesics in
//! the Cayley tree. This crate builds Whitehead graphs over finite subtrees,
//! minimizes patterns under Whitehead automorphisms, classifies the
//! connectivity of the pattern's decomposition space (disconnected, cut
//! point, cut pair, circle, or rigid), enumerates minimal cut sets of lines,
//! and assembles the dual cube complex those cut sets define.

pub mod cutsets;
pub mod pattern;
pub mod reduction;
pub mod whitehead;
pub mod words;

pub use cutsets::{
    classify_periodic, core, crosses, detect_cut_pairs, enumerate, finest_compatible_partition,
    has_cut_point, is_decomposable, is_minimal_cut_set, pruned_core, Catalog, CatalogEntry,
    CutError, CutPairWitness, CutPairs, CutSet, Decomposability, Minimality, PeriodicClass,
    PeriodicVerdict, DEFAULT_DEPTH_CAP,
};
pub use pattern::{Direction, Line, LinePattern, LoadReport, PatternError, Subtree, TreeVertex};
pub use reduction::{
    complexity, cut_vertex_reduction, decomposition_connectivity, minimize,
    reducing_automorphism, width, Connectivity, ReductionError, ReductionTrace,
};
pub use whitehead::{
    wh_at_vertex, wh_over, NodePartition, WhComponent, WhEdge, WhEnd, WhError, WhGraph,
};
pub use words::{CyclicReduction, CyclicWord, Letter, WhiteheadAut, Word, WordError};
