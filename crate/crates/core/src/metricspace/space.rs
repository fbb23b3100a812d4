use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::graphcore::{Connectivity, Graph};

/// Tolerance for symmetry and the triangle inequality at load time.
pub const METRIC_TOLERANCE: f64 = 1e-9;

/// Labelled finite metric space with a dense distance table.
#[derive(Clone, Debug, PartialEq)]
pub struct FiniteMetricSpace {
    labels: Vec<String>,
    n: usize,
    d: Vec<f64>,
}

impl FiniteMetricSpace {
    /// Validates the matrix: zero diagonal, positive symmetric off-diagonal
    /// entries and the triangle inequality, all within [`METRIC_TOLERANCE`].
    pub fn new(labels: Vec<String>, dist: Vec<Vec<f64>>) -> Result<Self> {
        let s = Self::from_rows(labels, dist)?;
        let n = s.n;
        for x in 0..n {
            for y in 0..n {
                let dxy = s.dist(x, y);
                for z in 0..n {
                    if s.dist(x, z) > dxy + s.dist(y, z) + METRIC_TOLERANCE {
                        return invalid(format!(
                            "triangle inequality fails for ({}, {}, {})",
                            s.labels[x], s.labels[y], s.labels[z]
                        ));
                    }
                }
            }
        }
        Ok(s)
    }

    /// Like [`new`](Self::new) without the cubic triangle scan; used by
    /// generators whose output is a metric by construction.
    pub fn new_trusted(labels: Vec<String>, dist: Vec<Vec<f64>>) -> Result<Self> {
        Self::from_rows(labels, dist)
    }

    fn from_rows(labels: Vec<String>, dist: Vec<Vec<f64>>) -> Result<Self> {
        let n = labels.len();
        if n == 0 {
            return invalid("metric space has no points");
        }
        let mut seen = std::collections::HashSet::new();
        for l in &labels {
            if !seen.insert(l) {
                return invalid(format!("duplicate point {l:?}"));
            }
        }
        if dist.len() != n || dist.iter().any(|r| r.len() != n) {
            return invalid(format!("distance matrix must be {n}x{n}"));
        }
        let mut d = vec![0.0; n * n];
        for x in 0..n {
            if dist[x][x] != 0.0 {
                return invalid(format!("d({0},{0}) must be 0", labels[x]));
            }
            for y in x + 1..n {
                let (a, b) = (dist[x][y], dist[y][x]);
                if !a.is_finite() || !b.is_finite() || a <= 0.0 || b <= 0.0 {
                    return invalid(format!("d({}, {}) must be positive and finite", labels[x], labels[y]));
                }
                if (a - b).abs() > METRIC_TOLERANCE {
                    return invalid(format!("matrix is not symmetric at ({}, {})", labels[x], labels[y]));
                }
                d[x * n + y] = a;
                d[y * n + x] = a;
            }
        }
        Ok(FiniteMetricSpace { labels, n, d })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    pub fn dist(&self, x: usize, y: usize) -> f64 {
        self.d[x * self.n + y]
    }

    pub fn row(&self, x: usize) -> &[f64] {
        &self.d[x * self.n..(x + 1) * self.n]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, x: usize) -> &str {
        &self.labels[x]
    }

    pub fn point(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn diameter(&self) -> f64 {
        self.d.iter().copied().fold(0.0, f64::max)
    }

    /// Smallest positive distance; `None` for a singleton.
    pub fn min_distance(&self) -> Option<f64> {
        (0..self.n)
            .flat_map(|x| (x + 1..self.n).map(move |y| (x, y)))
            .map(|(x, y)| self.dist(x, y))
            .reduce(f64::min)
    }

    /// Subspace on `points`, in the given order.
    pub fn subspace(&self, points: &[usize]) -> FiniteMetricSpace {
        let labels = points.iter().map(|&p| self.labels[p].clone()).collect();
        let n = points.len();
        let mut d = vec![0.0; n * n];
        for (i, &p) in points.iter().enumerate() {
            for (j, &q) in points.iter().enumerate() {
                d[i * n + j] = self.dist(p, q);
            }
        }
        FiniteMetricSpace { labels, n, d }
    }

    pub fn to_file(&self) -> MetricFile {
        MetricFile {
            dist: (0..self.n).map(|x| self.row(x).to_vec()).collect(),
            points: self.labels.clone(),
        }
    }
}

/// On-disk metric document (keys in alphabetical order).
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct MetricFile {
    pub dist: Vec<Vec<f64>>,
    pub points: Vec<String>,
}

impl MetricFile {
    pub fn to_space(&self) -> Result<FiniteMetricSpace> {
        FiniteMetricSpace::new(self.points.clone(), self.dist.clone())
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("serializable");
        s.push('\n');
        s
    }
}

pub fn load_metric(path: &std::path::Path) -> Result<FiniteMetricSpace> {
    let text = std::fs::read_to_string(path)?;
    let f: MetricFile = serde_json::from_str(&text)?;
    f.to_space()
}

/// Maximal `r`-separated set: points are scanned in input order and kept
/// when at distance `≥ r` from every point kept so far.
pub fn greedy_separated(x: &FiniteMetricSpace, r: f64) -> Vec<usize> {
    assert!(r > 0.0, "separation must be positive");
    let mut kept: Vec<usize> = Vec::new();
    for p in 0..x.len() {
        if kept.iter().all(|&a| x.dist(p, a) >= r) {
            kept.push(p);
        }
    }
    kept
}

/// ε-net graph: vertices are the greedy ε-separated points, edges join
/// points at distance at most `2ε`. The graph may be disconnected.
pub fn epsilon_net(x: &FiniteMetricSpace, eps: f64) -> Result<Graph> {
    if eps <= 0.0 || !eps.is_finite() {
        return invalid("epsilon must be positive");
    }
    let pts = greedy_separated(x, eps);
    let labels = pts.iter().map(|&p| x.label(p).to_string()).collect();
    let mut edges = Vec::new();
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            if x.dist(pts[i], pts[j]) <= 2.0 * eps {
                edges.push((i, j));
            }
        }
    }
    Graph::build(labels, &edges, &[], Connectivity::Allow)
}

/// Strongly-bounded-geometry counts per scale.
#[derive(Clone, Debug, PartialEq)]
pub struct SbgProfile {
    pub k: f64,
    /// `(ε, max_x |A_ε ∩ B(x, Kε)|, first x attaining it)`.
    pub per_scale: Vec<(f64, usize, usize)>,
    /// `1 +` the largest count.
    pub m: usize,
}

/// For each ε, the largest number of greedy ε-separated points in an open
/// ball `B(x, Kε)`.
pub fn strongly_bounded_geometry_profile(x: &FiniteMetricSpace, k: f64, scales: &[f64]) -> Result<SbgProfile> {
    if scales.is_empty() {
        return invalid("no scales given");
    }
    if k <= 0.0 {
        return invalid("K must be positive");
    }
    let diam = x.diameter();
    let mut per_scale = Vec::with_capacity(scales.len());
    for &eps in scales {
        if eps <= 0.0 || (eps > diam && x.len() > 1) {
            return invalid(format!("scale {eps} is outside (0, diam X]"));
        }
        let a = greedy_separated(x, eps);
        let (mut best, mut arg) = (0, 0);
        for p in 0..x.len() {
            let c = a.iter().filter(|&&q| x.dist(p, q) < k * eps).count();
            if c > best {
                best = c;
                arg = p;
            }
        }
        per_scale.push((eps, best, arg));
    }
    let m = 1 + per_scale.iter().map(|s| s.1).max().unwrap();
    Ok(SbgProfile { k, per_scale, m })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metricspace::generators::{interval_sample, line_space};

    #[test]
    fn greedy_on_line() {
        let x = line_space(&[0.0, 0.5, 1.1, 3.0]);
        assert_eq!(greedy_separated(&x, 1.0), vec![0, 2, 3]);
        assert_eq!(greedy_separated(&x, 10.0), vec![0]);
        assert_eq!(greedy_separated(&x, 0.5), vec![0, 1, 2, 3]);
    }

    #[test]
    fn net_on_line() {
        let x = line_space(&[0.0, 0.5, 1.1, 3.0]);
        let g = epsilon_net(&x, 1.0).unwrap();
        assert_eq!(g.len(), 3);
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 1), (1, 2)]);
        // at eps = diam the far endpoint is still eps-separated
        let g = epsilon_net(&x, 3.0).unwrap();
        assert_eq!((g.len(), g.edge_count()), (2, 1));
        let g = epsilon_net(&x, 3.5).unwrap();
        assert_eq!((g.len(), g.edge_count()), (1, 0));
    }

    #[test]
    fn rejects_non_metrics() {
        let l = vec!["a".to_string(), "b".to_string(), "c".to_string()];
        let bad = vec![vec![0.0, 1.0, 5.0], vec![1.0, 0.0, 1.0], vec![5.0, 1.0, 0.0]];
        assert!(FiniteMetricSpace::new(l.clone(), bad).is_err());
        let asym = vec![vec![0.0, 1.0, 1.0], vec![1.5, 0.0, 1.0], vec![1.0, 1.0, 0.0]];
        assert!(FiniteMetricSpace::new(l.clone(), asym).is_err());
        let zero = vec![vec![0.0, 0.0, 1.0], vec![0.0, 0.0, 1.0], vec![1.0, 1.0, 0.0]];
        assert!(FiniteMetricSpace::new(l, zero).is_err());
    }

    #[test]
    fn sbg_counts() {
        let x = interval_sample(65);
        let p = strongly_bounded_geometry_profile(&x, 5.0, &[0.125]).unwrap();
        assert!(p.per_scale[0].1 <= 11);
        assert!(p.m <= 12);
        let one = line_space(&[0.0]);
        let p = strongly_bounded_geometry_profile(&one, 5.0, &[1.0]).unwrap();
        assert_eq!(p.m, 2);
        assert!(strongly_bounded_geometry_profile(&x, 5.0, &[]).is_err());
    }
}
