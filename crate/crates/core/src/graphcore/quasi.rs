use serde_json::{json, Value};

use super::graph::{Graph, Vertex, UNREACHABLE};
use crate::error::{invalid, Result};
use crate::rational::{self, int, Rational};

/// Result of a quasi-isometry check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuasiIsometryReport {
    pub embedding_holds: bool,
    pub full_holds: bool,
    /// Pair with the smallest slack in the two-sided distance inequality.
    pub worst_pair: Option<(Vertex, Vertex)>,
    pub worst_slack: Option<Rational>,
    /// Target vertex farthest from the image; `None` means an unreachable one.
    pub farthest: Option<Vertex>,
    pub farthest_distance: Option<u32>,
}

impl QuasiIsometryReport {
    pub fn holds(&self) -> bool {
        self.embedding_holds && self.full_holds
    }

    pub fn to_json(&self, g1: &Graph, g2: &Graph) -> Value {
        json!({
            "holds": self.holds(),
            "embedding_holds": self.embedding_holds,
            "full_holds": self.full_holds,
            "worst_pair": self.worst_pair.map(|(x, y)| [g1.label(x), g1.label(y)]),
            "worst_slack": self.worst_slack.as_ref().map(|s| s.to_string()),
            "farthest": self.farthest.map(|v| g2.label(v)),
            "farthest_distance": self.farthest_distance,
        })
    }
}

/// Checks `d(x,y)/α − β ≤ d(f x, f y) ≤ α d(x,y) + β` for all pairs and that
/// every vertex of `g2` lies within `ε` of the image.
pub fn quasi_isometry_check(
    g1: &Graph,
    g2: &Graph,
    map: &[Vertex],
    alpha: &Rational,
    beta: &Rational,
    eps: &Rational,
) -> Result<QuasiIsometryReport> {
    if map.len() != g1.len() {
        return invalid("map must be defined on every vertex of the source graph");
    }
    if let Some(&v) = map.iter().find(|&&v| v >= g2.len()) {
        return invalid(format!("map sends a vertex to {v}, which is not in the target"));
    }
    if *alpha < rational::one() || *beta < rational::zero() || *eps < rational::zero() {
        return invalid("need alpha >= 1, beta >= 0, eps >= 0");
    }
    let d1 = g1.distance_matrix();
    let mut worst: Option<(Rational, Vertex, Vertex)> = None;
    for x in 0..g1.len() {
        let row2 = g2.distances_from(map[x]);
        for y in x + 1..g1.len() {
            let a = d1.get(x, y);
            let b = row2[map[y]];
            let slack = if a == UNREACHABLE || b == UNREACHABLE {
                if a == b {
                    continue;
                }
                int(-1)
            } else {
                let (a, b) = (int(a as i64), int(b as i64));
                let lo = b.clone() - a.clone() / alpha + beta;
                let hi = alpha * a + beta - b;
                lo.min(hi)
            };
            if worst.as_ref().is_none_or(|(w, _, _)| slack < *w) {
                worst = Some((slack, x, y));
            }
        }
    }
    let mut image: Vec<Vertex> = map.to_vec();
    image.sort_unstable();
    image.dedup();
    let dist = g2.distances_from_set(&image);
    let mut far: Option<(u32, Vertex)> = None;
    for (v, &d) in dist.iter().enumerate() {
        if far.is_none_or(|(fd, _)| d > fd) {
            far = Some((d, v));
        }
    }
    let embedding_holds = worst.as_ref().is_none_or(|(s, _, _)| *s >= rational::zero());
    let full_holds = far.is_none_or(|(d, _)| d != UNREACHABLE && int(d as i64) <= *eps);
    Ok(QuasiIsometryReport {
        embedding_holds,
        full_holds,
        worst_pair: worst.as_ref().map(|(_, x, y)| (*x, *y)),
        worst_slack: worst.map(|(s, _, _)| s),
        farthest: far.map(|(_, v)| v),
        farthest_distance: far.and_then(|(d, _)| (d != UNREACHABLE).then_some(d)),
    })
}
