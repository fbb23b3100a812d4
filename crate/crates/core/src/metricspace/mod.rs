//! Finite metric spaces, separated sets, nets, uniform perfectness and
//! strongly bounded geometry.

pub mod generators;
pub mod perfect;
pub mod space;

pub use generators::{cantor_sample, interval_sample, line_space, two_point};
pub use perfect::{
    rescale_eps0, two_point_condition, two_point_perfectness_check, uniformly_perfect_check, Form,
    PerfectnessCertificate, PerfectnessStatus, annulus_nonempty,
};
pub use space::{
    epsilon_net, greedy_separated, load_metric, strongly_bounded_geometry_profile, FiniteMetricSpace, MetricFile,
    SbgProfile, METRIC_TOLERANCE,
};
