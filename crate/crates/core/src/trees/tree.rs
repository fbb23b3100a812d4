use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::graphcore::{Graph, Vertex};

/// Finite rooted tree with horizon `D` and live-leaf markers. Vertex `0` is
/// the root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootedTree {
    labels: Vec<String>,
    parent: Vec<Option<Vertex>>,
    children: Vec<Vec<Vertex>>,
    depth: Vec<u32>,
    live: Vec<bool>,
    horizon: u32,
}

impl RootedTree {
    /// Builds a tree from parent pointers; `parents[0]` must be `None`.
    ///
    /// Validation: live vertices are leaves at depth `D = max depth`, other
    /// leaves are shallower than `D`, and `D ≥ 1`. A tree without live
    /// leaves is accepted as a bounded tree.
    pub fn from_parents(labels: Vec<String>, parents: Vec<Option<Vertex>>, live: Vec<bool>) -> Result<Self> {
        let n = labels.len();
        if n == 0 || parents.len() != n || live.len() != n {
            return invalid("tree arrays must be non-empty and of equal length");
        }
        let mut seen = std::collections::HashSet::new();
        for l in &labels {
            if !seen.insert(l) {
                return invalid(format!("duplicate tree vertex {l:?}"));
            }
        }
        if parents[0].is_some() {
            return invalid("vertex 0 must be the root");
        }
        let mut children = vec![Vec::new(); n];
        for (v, p) in parents.iter().enumerate().skip(1) {
            match *p {
                Some(p) if p < n && p != v => children[p].push(v),
                Some(_) => return invalid(format!("bad parent for {:?}", labels[v])),
                None => return invalid(format!("second root {:?}", labels[v])),
            }
        }
        let mut depth = vec![u32::MAX; n];
        depth[0] = 0;
        let mut order = vec![0];
        let mut i = 0;
        while i < order.len() {
            let u = order[i];
            i += 1;
            for &c in &children[u] {
                depth[c] = depth[u] + 1;
                order.push(c);
            }
        }
        if order.len() != n {
            return invalid("parent pointers contain a cycle");
        }
        let max_depth = *depth.iter().max().unwrap();
        let any_live = live.iter().any(|&l| l);
        for v in 0..n {
            let leaf = children[v].is_empty();
            if live[v] && !leaf {
                return invalid(format!("live vertex {:?} is not a leaf", labels[v]));
            }
            if live[v] && depth[v] != max_depth {
                return Err(Error::InvalidHorizon(format!(
                    "live leaf {:?} at depth {} but the horizon is {}",
                    labels[v], depth[v], max_depth
                )));
            }
            if any_live && leaf && !live[v] && depth[v] >= max_depth {
                return Err(Error::InvalidHorizon(format!(
                    "dead leaf {:?} sits on the horizon {}",
                    labels[v], max_depth
                )));
            }
        }
        if max_depth < 1 {
            return Err(Error::InvalidHorizon("horizon must be at least 1".into()));
        }
        Ok(RootedTree {
            labels,
            parent: parents,
            children,
            depth,
            live,
            horizon: max_depth,
        })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn root(&self) -> Vertex {
        0
    }

    /// The horizon `D`.
    pub fn horizon(&self) -> u32 {
        self.horizon
    }

    pub fn label(&self, v: Vertex) -> &str {
        &self.labels[v]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn vertex(&self, label: &str) -> Option<Vertex> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn parent(&self, v: Vertex) -> Option<Vertex> {
        self.parent[v]
    }

    pub fn children(&self, v: Vertex) -> &[Vertex] {
        &self.children[v]
    }

    pub fn depth(&self, v: Vertex) -> u32 {
        self.depth[v]
    }

    pub fn is_live(&self, v: Vertex) -> bool {
        self.live[v]
    }

    pub fn live_leaves(&self) -> Vec<Vertex> {
        (0..self.len()).filter(|&v| self.live[v]).collect()
    }

    /// Vertices in breadth-first order (by depth, then index).
    pub fn bfs_order(&self) -> Vec<Vertex> {
        let mut order = vec![0];
        let mut i = 0;
        while i < order.len() {
            let u = order[i];
            i += 1;
            order.extend_from_slice(&self.children[u]);
        }
        order
    }

    /// `T^v_x`: `x` and all its descendants, sorted.
    pub fn subtree_past(&self, x: Vertex) -> Result<Vec<Vertex>> {
        if x >= self.len() {
            return invalid(format!("vertex {x} is not in the tree"));
        }
        let mut out = vec![x];
        let mut i = 0;
        while i < out.len() {
            let u = out[i];
            i += 1;
            out.extend_from_slice(&self.children[u]);
        }
        out.sort_unstable();
        Ok(out)
    }

    /// Sphere `S(v, t)` around the root.
    pub fn sphere(&self, t: u32) -> Vec<Vertex> {
        (0..self.len()).filter(|&v| self.depth[v] == t).collect()
    }

    /// The truncation window: same vertices and edges, frontier = the
    /// depth-`D` sphere (the live leaves).
    pub fn to_graph(&self) -> Graph {
        let edges: Vec<(Vertex, Vertex)> = (1..self.len()).map(|v| (self.parent[v].unwrap(), v)).collect();
        Graph::new(self.labels.clone(), &edges, &self.live_leaves()).expect("a tree is a connected simple graph")
    }

    /// Subtree on `keep` (which must contain the root and be closed under
    /// taking parents). Live markers are inherited.
    pub fn restrict(&self, keep: &[bool]) -> Result<RootedTree> {
        if !keep[0] {
            return invalid("restriction must keep the root");
        }
        let mut map = vec![usize::MAX; self.len()];
        let mut labels = Vec::new();
        let mut parents = Vec::new();
        let mut live = Vec::new();
        for v in self.bfs_order() {
            if !keep[v] {
                continue;
            }
            let p = match self.parent[v] {
                Some(p) if map[p] == usize::MAX => return invalid("restriction is not closed under parents"),
                Some(p) => Some(map[p]),
                None => None,
            };
            map[v] = labels.len();
            labels.push(self.labels[v].clone());
            parents.push(p);
            live.push(self.live[v]);
        }
        RootedTree::from_parents(labels, parents, live)
    }

    /// Lowest common ancestor.
    pub fn lca(&self, mut a: Vertex, mut b: Vertex) -> Vertex {
        while self.depth[a] > self.depth[b] {
            a = self.parent[a].unwrap();
        }
        while self.depth[b] > self.depth[a] {
            b = self.parent[b].unwrap();
        }
        while a != b {
            a = self.parent[a].unwrap();
            b = self.parent[b].unwrap();
        }
        a
    }

    pub fn from_node(root: &TreeNode) -> Result<Self> {
        let mut labels = Vec::new();
        let mut parents = Vec::new();
        let mut live = Vec::new();
        let mut stack: Vec<(&TreeNode, Option<usize>)> = vec![(root, None)];
        while let Some((node, p)) = stack.pop() {
            let id = labels.len();
            labels.push(node.name.clone());
            parents.push(p);
            live.push(node.live);
            for c in node.children.iter().rev() {
                stack.push((c, Some(id)));
            }
        }
        RootedTree::from_parents(labels, parents, live)
    }

    pub fn to_node(&self) -> TreeNode {
        fn build(t: &RootedTree, v: Vertex) -> TreeNode {
            TreeNode {
                children: t.children[v].iter().map(|&c| build(t, c)).collect(),
                live: t.live[v],
                name: t.labels[v].clone(),
            }
        }
        build(self, 0)
    }

    pub fn index(&self) -> HashMap<&str, Vertex> {
        self.labels.iter().enumerate().map(|(i, l)| (l.as_str(), i)).collect()
    }
}

/// Nested tree document `{name, live?, children[]}`; keys are written in
/// alphabetical order.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct TreeNode {
    #[serde(default)]
    pub children: Vec<TreeNode>,
    #[serde(default)]
    pub live: bool,
    pub name: String,
}

impl TreeNode {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("serializable");
        s.push('\n');
        s
    }
}

pub fn load_tree(path: &std::path::Path) -> Result<RootedTree> {
    let text = std::fs::read_to_string(path)?;
    let node: TreeNode = serde_json::from_str(&text)?;
    RootedTree::from_node(&node)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn strs(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn validates_horizon() {
        // r -> a (live, depth 1), r -> b -> c (live, depth 2): live a is too shallow
        let bad = RootedTree::from_parents(
            strs(&["r", "a", "b", "c"]),
            vec![None, Some(0), Some(0), Some(2)],
            vec![false, true, false, true],
        );
        assert!(matches!(bad, Err(Error::InvalidHorizon(_))));
        let ok = RootedTree::from_parents(
            strs(&["r", "a", "b", "c"]),
            vec![None, Some(0), Some(0), Some(2)],
            vec![false, false, false, true],
        )
        .unwrap();
        assert_eq!(ok.horizon(), 2);
        assert!(RootedTree::from_parents(strs(&["r"]), vec![None], vec![false]).is_err());
        let dead_on_horizon = RootedTree::from_parents(
            strs(&["r", "a", "b"]),
            vec![None, Some(0), Some(0)],
            vec![false, true, false],
        );
        assert!(dead_on_horizon.is_err());
    }

    #[test]
    fn node_round_trip() {
        let text = r#"{"name":"r","children":[{"name":"a","live":true},{"name":"b","live":true}]}"#;
        let node: TreeNode = serde_json::from_str(text).unwrap();
        let t = RootedTree::from_node(&node).unwrap();
        assert_eq!(t.horizon(), 1);
        assert_eq!(t.to_node(), node);
        let g = t.to_graph();
        assert_eq!(g.frontier(), vec![1, 2]);
    }
}
