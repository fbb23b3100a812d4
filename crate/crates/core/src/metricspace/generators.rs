//! Canonical sample spaces, all with the line metric `|x − y|`.

use super::space::FiniteMetricSpace;

fn fmt_point(v: f64) -> String {
    format!("{v}")
}

/// Points `xs` of the real line, labelled by their value.
pub fn line_space(xs: &[f64]) -> FiniteMetricSpace {
    let labels = xs.iter().map(|&v| fmt_point(v)).collect();
    let dist = xs.iter().map(|&a| xs.iter().map(|&b| (a - b).abs()).collect()).collect();
    FiniteMetricSpace::new_trusted(labels, dist).expect("distinct points")
}

/// Left endpoints of the `2^depth` middle-thirds intervals of level `depth`,
/// ascending. Coordinates are exact integers over `3^depth` before division.
pub fn cantor_sample(depth: u32) -> FiniteMetricSpace {
    assert!(depth >= 1, "depth must be at least 1");
    let mut ends: Vec<u64> = vec![0];
    for _ in 0..depth {
        ends = ends.iter().flat_map(|&e| [3 * e, 3 * e + 2]).collect();
    }
    let scale = 3u64.pow(depth) as f64;
    let labels = ends.iter().map(|e| format!("{e}/{}", 3u64.pow(depth))).collect();
    let dist = ends
        .iter()
        .map(|&a| ends.iter().map(|&b| a.abs_diff(b) as f64 / scale).collect())
        .collect();
    FiniteMetricSpace::new_trusted(labels, dist).expect("distinct points")
}

/// `n` equally spaced points on `[0, 1]`, labelled `"i/(n-1)"`.
pub fn interval_sample(n: usize) -> FiniteMetricSpace {
    assert!(n >= 2, "need at least two points");
    let m = (n - 1) as f64;
    let labels = (0..n).map(|i| format!("{i}/{}", n - 1)).collect();
    let dist = (0..n)
        .map(|i| (0..n).map(|j| i.abs_diff(j) as f64 / m).collect())
        .collect();
    FiniteMetricSpace::new_trusted(labels, dist).expect("distinct points")
}

/// Points `p`, `q` at distance `d`.
pub fn two_point(d: f64) -> FiniteMetricSpace {
    assert!(d > 0.0, "distance must be positive");
    FiniteMetricSpace::new_trusted(vec!["p".into(), "q".into()], vec![vec![0.0, d], vec![d, 0.0]]).expect("valid")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cantor_level_two() {
        let c = cantor_sample(2);
        assert_eq!(c.labels(), &["0/9", "2/9", "6/9", "8/9"]);
        assert_eq!(c.dist(0, 1), 2.0 / 9.0);
        assert_eq!(c.dist(0, 3), 8.0 / 9.0);
        assert_eq!(cantor_sample(7).len(), 128);
        assert_eq!(cantor_sample(7).min_distance(), Some(2.0 / 2187.0));
    }

    #[test]
    fn interval_and_pair() {
        let i = interval_sample(3);
        assert_eq!(i.dist(0, 1), 0.5);
        assert_eq!(i.dist(0, 2), 1.0);
        assert_eq!(two_point(1.0).dist(0, 1), 1.0);
    }
}
