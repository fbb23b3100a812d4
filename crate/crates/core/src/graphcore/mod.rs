//! Graphs, BFS metric, vertex boundaries, discrete calculus, exact window
//! oracles and function certificates. All quantities are exact rationals.

pub mod bound;
pub mod calculus;
pub mod connected;
pub mod window;
pub mod graph;
pub mod quasi;
pub mod treedp;

pub use bound::{CheegerBound, Provenance};
pub use calculus::{
    certificate_constants, certificate_lower_bound, corollary_connected_bound, gradient, green_identity_check,
    interior, laplacian, Certificate, CertificateConstants, CorollaryCheck, VertexFunction,
};
pub use connected::connected_subsets;
pub use window::{
    admissible_mask, admissible_vertices, boundary, cheeger_ratio, interior_cheeger, interior_cheeger_bruteforce,
    subset_count, window_minimum, WindowMethod, WindowMinimum, WindowSearch, DEFAULT_BUDGET,
};
pub use graph::{
    cycle_graph, grid_graph, grid_window, load_graph, path_graph, Connectivity, DistanceMatrix, Graph, GraphFile, Vertex,
    UNREACHABLE,
};
pub use quasi::{quasi_isometry_check, QuasiIsometryReport};
