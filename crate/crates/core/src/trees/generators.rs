//! Canonical tree families. Child `i` of a vertex labelled `x` is labelled
//! `x.i`; the root is `r`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::tree::RootedTree;

struct Builder {
    labels: Vec<String>,
    parents: Vec<Option<usize>>,
    live: Vec<bool>,
}

impl Builder {
    fn new(root: &str) -> Self {
        Builder {
            labels: vec![root.to_string()],
            parents: vec![None],
            live: vec![false],
        }
    }

    fn add(&mut self, parent: usize, label: String) -> usize {
        self.labels.push(label);
        self.parents.push(Some(parent));
        self.live.push(false);
        self.labels.len() - 1
    }

    fn chain(&mut self, mut from: usize, len: usize, label: impl Fn(usize) -> String) -> usize {
        for j in 1..=len {
            from = self.add(from, label(j));
        }
        from
    }

    fn finish(mut self, horizon: u32) -> RootedTree {
        let n = self.labels.len();
        let mut has_child = vec![false; n];
        let mut depth = vec![0u32; n];
        for v in 1..n {
            let p = self.parents[v].unwrap();
            has_child[p] = true;
            depth[v] = depth[p] + 1;
        }
        for v in 0..n {
            self.live[v] = !has_child[v] && depth[v] == horizon;
        }
        RootedTree::from_parents(self.labels, self.parents, self.live).expect("generator output is valid")
    }
}

/// Tree in which every vertex at depth `t < D` has `branching(t)` children.
/// All leaves are live.
pub fn layered_tree(horizon: u32, branching: impl Fn(u32) -> usize) -> RootedTree {
    assert!(horizon >= 1);
    let mut b = Builder::new("r");
    let mut level = vec![0usize];
    for t in 0..horizon {
        let mut next = Vec::new();
        for &u in &level {
            for i in 0..branching(t) {
                let label = format!("{}.{i}", b.labels[u]);
                next.push(b.add(u, label));
            }
        }
        level = next;
    }
    b.finish(horizon)
}

/// Truncation of the homogeneous `k`-tree at depth `D`: the root has `k`
/// children, every other vertex `k − 1`.
pub fn homogeneous_tree(k: usize, horizon: u32) -> RootedTree {
    assert!(k >= 2);
    layered_tree(horizon, |t| if t == 0 { k } else { k - 1 })
}

/// Live spine `s0 … sD`; every spine vertex `s_t` with `t + teeth < D`
/// carries a dead tooth of `teeth` vertices.
pub fn comb(horizon: u32, teeth: usize) -> RootedTree {
    let mut b = Builder::new("s0");
    let mut spine = vec![0];
    for t in 1..=horizon {
        let prev = *spine.last().unwrap();
        spine.push(b.add(prev, format!("s{t}")));
    }
    if teeth > 0 {
        for t in 0..horizon as usize {
            if t + teeth < horizon as usize {
                b.chain(spine[t], teeth, |j| format!("t{t}_{j}"));
            }
        }
    }
    b.finish(horizon)
}

/// Live spine `s0 … sD` with a live hair from every `s_t` (`t < D`) running
/// straight down to depth `D`. It contains single-descendant chains of every
/// length up to `D − 1`.
pub fn growing_chain(horizon: u32) -> RootedTree {
    let mut b = Builder::new("s0");
    let mut spine = vec![0];
    for t in 1..=horizon {
        let prev = *spine.last().unwrap();
        spine.push(b.add(prev, format!("s{t}")));
    }
    for t in 0..horizon as usize {
        b.chain(spine[t], horizon as usize - t, |j| format!("h{t}_{}", t + j));
    }
    b.finish(horizon)
}

/// `base` with dead chains attached: eligible vertices (in breadth-first
/// order) receive chains whose lengths cycle through `sizes`; a vertex at
/// depth `t` is eligible for length `L` when `t + L < D`.
pub fn grafted_dead_branches(base: &RootedTree, sizes: &[usize]) -> RootedTree {
    assert!(!sizes.is_empty() && sizes.iter().all(|&s| s > 0));
    let horizon = base.horizon();
    let order = base.bfs_order();
    let mut b = Builder::new(base.label(0));
    let mut map = vec![0usize; base.len()];
    for &v in order.iter().skip(1) {
        map[v] = b.add(map[base.parent(v).unwrap()], base.label(v).to_string());
    }
    let mut i = 0;
    for &v in &order {
        let len = sizes[i % sizes.len()];
        if base.depth(v) as usize + len < horizon as usize {
            b.chain(map[v], len, |j| format!("{}/d{j}", base.label(v)));
            i += 1;
        }
    }
    b.finish(horizon)
}

/// Every vertex at depth `t < D` gets between `min` and `max` children,
/// drawn from a seeded generator.
pub fn random_branching_tree(horizon: u32, min: usize, max: usize, seed: u64) -> RootedTree {
    assert!(1 <= min && min <= max);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut b = Builder::new("r");
    let mut level = vec![0usize];
    for _ in 0..horizon {
        let mut next = Vec::new();
        for &u in &level {
            for i in 0..rng.gen_range(min..=max) {
                let label = format!("{}.{i}", b.labels[u]);
                next.push(b.add(u, label));
            }
        }
        level = next;
    }
    b.finish(horizon)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn homogeneous_spheres() {
        let t = homogeneous_tree(3, 4);
        for s in 1..=4u32 {
            assert_eq!(t.sphere(s).len(), 3 * (1 << (s - 1)));
        }
        assert_eq!(t.live_leaves().len(), 24);
    }

    #[test]
    fn growing_chain_shape() {
        let t = growing_chain(5);
        assert_eq!(t.horizon(), 5);
        // spine plus hairs of lengths 5, 4, 3, 2, 1
        assert_eq!(t.len(), 6 + 15);
        assert_eq!(t.live_leaves().len(), 6);
    }

    #[test]
    fn comb_teeth_are_dead() {
        let t = comb(6, 3);
        assert_eq!(t.live_leaves().len(), 1);
        // teeth at s0, s1, s2
        assert_eq!(t.len(), 7 + 9);
    }

    #[test]
    fn grafting_respects_horizon() {
        let t = grafted_dead_branches(&homogeneous_tree(3, 4), &[3]);
        // only the root is shallow enough for a 3-chain
        assert_eq!(t.len(), homogeneous_tree(3, 4).len() + 3);
        let t2 = grafted_dead_branches(&homogeneous_tree(3, 4), &[1]);
        assert_eq!(t2.len(), homogeneous_tree(3, 4).len() + 1 + 3 + 6);
    }
}
