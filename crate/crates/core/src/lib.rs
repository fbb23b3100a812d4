//! Certified Cheeger isoperimetric bounds.
//!
//! The crate computes, certifies and falsifies lower and upper bounds for the
//! vertex Cheeger constant `h = inf |∂A|/|A|` of graphs, rooted trees and
//! hyperbolic approximation graphs of finite metric spaces. Every bound comes
//! with a witness that can be re-verified independently.
//!
//! Modules:
//! - [`graphcore`]: graphs, BFS metric, boundaries, discrete calculus, exact
//!   window oracles and function certificates.
//! - [`metricspace`]: finite metric spaces, separated sets, nets, uniform
//!   perfectness.
//! - [`hyperbolicity`]: Gromov products and the four-point δ.
//! - [`trees`]: rooted trees with a depth horizon, pseudo-regularity,
//!   complementedness and the end space.
//! - [`hyperapprox`]: hyperbolic approximation graphs of metric spaces.
//! - [`decomp`]: (R,r)-decompositions, grafting and converse scans.
//! - [`cli`]: the command line front end.

pub mod cli;
pub mod decomp;
pub mod error;
pub mod graphcore;
pub mod hyperapprox;
pub mod hyperbolicity;
pub mod metricspace;
pub mod rational;
pub mod trees;

pub use error::{Error, Result};
pub use graphcore::{CheegerBound, Graph, Provenance, Vertex, VertexFunction};
pub use metricspace::FiniteMetricSpace;
pub use rational::{ratio, Rational};
pub use trees::RootedTree;
