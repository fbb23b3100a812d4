//! `(R, r)`-decompositions: validation, the resulting global lower bounds,
//! the graft construction and scans of window interior constants.

pub mod bounds;
pub mod graft;
pub mod scan;
pub mod spec;

pub use bounds::{bound_general, bound_strong};
pub use graft::{graft, graft_layout, tree_graft_decomposition, GraftLayout};
pub use scan::{converse_scan, ConverseReport, ScanConfig, ScanEntry};
pub use spec::{
    decomposition_bound, load_decomposition, validate, ComponentReport, DecompositionFile, DecompositionSpec,
    PieceCertificate, PieceReport, Role, ValidationReport, Violation,
};
