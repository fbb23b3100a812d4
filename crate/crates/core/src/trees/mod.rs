//! Rooted trees with a depth horizon.
//!
//! Live leaves sit at depth exactly `D` and stand for geodesic rays that
//! continue past the horizon; other leaves are genuine dead ends. Every
//! asymptotic notion (geodesic completeness, `T∞`, ends, pseudo-regularity,
//! complementedness) is evaluated exactly on the represented prefix.

pub mod analysis;
pub mod endspace;
pub mod generators;
pub mod lemmas;
pub mod tree;

pub use analysis::{
    analyze, complementedness_index, essential_boundary, maximal_complete_subtree, pseudo_regularity_index,
    tree_cheeger_bounds, verify_tree_theorem, Complementedness, EssentialBoundary, PseudoRegularity, TreeAnalysis,
    TreeBounds,
};
pub use endspace::end_space;
pub use generators::{comb, grafted_dead_branches, growing_chain, homogeneous_tree, layered_tree, random_branching_tree};
pub use crate::graphcore::connected_subsets;
pub use lemmas::{lemma_suite, LemmaOutcome, LemmaReport};
pub use tree::{load_tree, RootedTree, TreeNode};
