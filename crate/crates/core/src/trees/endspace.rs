use super::tree::RootedTree;
use crate::error::{Error, Result};
use crate::metricspace::FiniteMetricSpace;

/// Largest end space for which the ultrametric inequality is re-checked
/// exhaustively (the check is cubic).
const ULTRAMETRIC_CHECK_LIMIT: usize = 400;

/// End space of the horizon model: points are live leaves and
/// `d(F, G) = e^{−depth(lca(F, G))}`. Resolution is `e^{−D}`.
pub fn end_space(t: &RootedTree) -> Result<FiniteMetricSpace> {
    let leaves = t.live_leaves();
    if leaves.is_empty() {
        return Err(Error::EmptyWindow("tree has no live leaf, so the end space is empty".into()));
    }
    let labels = leaves.iter().map(|&v| t.label(v).to_string()).collect();
    let n = leaves.len();
    let mut dist = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let d = (-(t.depth(t.lca(leaves[i], leaves[j])) as f64)).exp();
            dist[i][j] = d;
            dist[j][i] = d;
        }
    }
    if n <= ULTRAMETRIC_CHECK_LIMIT {
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    assert!(
                        dist[x][y] <= dist[x][z].max(dist[z][y]),
                        "end space metric must be an ultrametric"
                    );
                }
            }
        }
    }
    FiniteMetricSpace::new_trusted(labels, dist)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::trees::generators::{homogeneous_tree, layered_tree};

    #[test]
    fn split_depth_sets_distance() {
        // root -> a -> b -> {c, d}: leaves split at depth 2
        let t = RootedTree::from_parents(
            ["r", "a", "b", "c", "d"].iter().map(|s| s.to_string()).collect(),
            vec![None, Some(0), Some(1), Some(2), Some(2)],
            vec![false, false, false, true, true],
        )
        .unwrap();
        let e = end_space(&t).unwrap();
        assert_eq!(e.dist(0, 1), (-2.0f64).exp());
    }

    #[test]
    fn binary_diameter_one() {
        let t = layered_tree(4, |_| 2);
        let e = end_space(&t).unwrap();
        assert_eq!(e.len(), 16);
        assert_eq!(e.diameter(), 1.0);
        assert!(end_space(&homogeneous_tree(3, 2)).is_ok());
    }
}
