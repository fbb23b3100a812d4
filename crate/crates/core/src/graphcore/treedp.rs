//! Exact minimum of `|∂A|/|A|` over subsets of a forest, by dynamic
//! programming over sizes.
//!
//! Each vertex has three states: in `A`; outside `A` with a child in `A`
//! (a boundary vertex); outside with no child in `A` (boundary only if its
//! parent is in `A`).

use super::graph::{Graph, Vertex};

const INF: u32 = u32::MAX / 4;

const IN: usize = 0;
const OUT_COVERED: usize = 1;
const OUT_FREE: usize = 2;

#[inline]
fn at(a: &[u32], i: usize) -> u32 {
    a.get(i).copied().unwrap_or(INF)
}

fn conv(a: &[u32], b: &[u32], cap: usize) -> Vec<u32> {
    let len = (a.len() + b.len()).saturating_sub(1).min(cap + 1);
    let mut out = vec![INF; len];
    for (i, &x) in a.iter().enumerate() {
        if x >= INF || i >= len {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            if i + j >= len {
                break;
            }
            if y < INF && x + y < out[i + j] {
                out[i + j] = x + y;
            }
        }
    }
    out
}

fn min2(a: &[u32], b: &[u32]) -> Vec<u32> {
    (0..a.len().max(b.len())).map(|i| at(a, i).min(at(b, i))).collect()
}

fn plus1(a: &[u32]) -> Vec<u32> {
    a.iter().map(|&x| if x >= INF { INF } else { x + 1 }).collect()
}

struct Node {
    children: Vec<Vertex>,
    /// Accumulators after each prefix of children: `[in, out_free, out_some]`,
    /// where `out_some` means some child is in `A`.
    acc: Vec<[Vec<u32>; 3]>,
    /// Final arrays indexed by `IN`, `OUT_COVERED`, `OUT_FREE`.
    fin: [Vec<u32>; 3],
}

impl Node {
    fn parent_in(&self) -> Vec<u32> {
        min2(&min2(&self.fin[IN], &self.fin[OUT_COVERED]), &plus1(&self.fin[OUT_FREE]))
    }
    fn parent_out_not_in(&self) -> Vec<u32> {
        min2(&self.fin[OUT_COVERED], &self.fin[OUT_FREE])
    }
}

/// Minimum boundary size for every set size `0..=cap` (index = size), and
/// the tables needed to recover a witness.
pub struct ForestTables {
    nodes: Vec<Node>,
    roots: Vec<Vertex>,
    comb: Vec<Vec<u32>>,
}

/// Runs the dynamic program. `allowed[v]` says whether `v` may be in `A`.
pub fn tables(g: &Graph, allowed: &[bool], cap: usize) -> ForestTables {
    let n = g.len();
    let mut parent = vec![usize::MAX; n];
    let mut seen = vec![false; n];
    let mut order = Vec::with_capacity(n);
    let mut roots = Vec::new();
    for r in 0..n {
        if seen[r] {
            continue;
        }
        roots.push(r);
        seen[r] = true;
        let start = order.len();
        order.push(r);
        let mut i = start;
        while i < order.len() {
            let u = order[i];
            i += 1;
            for &w in g.neighbors(u) {
                if !seen[w] {
                    seen[w] = true;
                    parent[w] = u;
                    order.push(w);
                }
            }
        }
    }
    let mut nodes: Vec<Node> = (0..n)
        .map(|_| Node {
            children: Vec::new(),
            acc: Vec::new(),
            fin: [Vec::new(), Vec::new(), Vec::new()],
        })
        .collect();
    for &u in &order {
        if parent[u] != usize::MAX {
            nodes[parent[u]].children.push(u);
        }
    }
    for &u in order.iter().rev() {
        let mut a_in = if allowed[u] { vec![INF, 0] } else { vec![INF] };
        let mut a_free = vec![0];
        let mut a_some = vec![INF];
        let mut acc = vec![[a_in.clone(), a_free.clone(), a_some.clone()]];
        for ci in 0..nodes[u].children.len() {
            let c = nodes[u].children[ci];
            let pin = nodes[c].parent_in();
            let pnot = nodes[c].parent_out_not_in();
            let cin = nodes[c].fin[IN].clone();
            let n_in = conv(&a_in, &pin, cap);
            let n_free = conv(&a_free, &pnot, cap);
            let n_some = min2(&conv(&a_some, &min2(&pnot, &cin), cap), &conv(&a_free, &cin, cap));
            a_in = n_in;
            a_free = n_free;
            a_some = n_some;
            acc.push([a_in.clone(), a_free.clone(), a_some.clone()]);
        }
        nodes[u].fin = [a_in, plus1(&a_some), a_free];
        nodes[u].acc = acc;
    }
    let mut comb = vec![vec![0u32]];
    for &r in &roots {
        let tot = min2(&min2(&nodes[r].fin[IN], &nodes[r].fin[OUT_COVERED]), &nodes[r].fin[OUT_FREE]);
        let next = conv(comb.last().unwrap(), &tot, cap);
        comb.push(next);
    }
    ForestTables { nodes, roots, comb }
}

impl ForestTables {
    /// Minimum `|∂A|` over allowed sets of each size; `None` if no set of that size exists.
    pub fn per_size(&self) -> Vec<Option<u32>> {
        self.comb
            .last()
            .unwrap()
            .iter()
            .map(|&x| if x >= INF { None } else { Some(x) })
            .collect()
    }

    /// A set of size `k` attaining the minimum boundary for that size.
    pub fn witness(&self, k: usize) -> Option<Vec<Vertex>> {
        let total = at(self.comb.last().unwrap(), k);
        if total >= INF {
            return None;
        }
        let mut work: Vec<(Vertex, usize, usize)> = Vec::new();
        let (mut kk, mut val) = (k, total);
        for j in (0..self.roots.len()).rev() {
            let r = self.roots[j];
            let prev = &self.comb[j];
            let node = &self.nodes[r];
            let tot = min2(&min2(&node.fin[IN], &node.fin[OUT_COVERED]), &node.fin[OUT_FREE]);
            let k2 = (0..=kk)
                .find(|&k2| at(prev, kk - k2).saturating_add(at(&tot, k2)) == val && at(&tot, k2) < INF)
                .expect("combination table is consistent");
            let state = (0..3).find(|&s| at(&node.fin[s], k2) == at(&tot, k2)).unwrap();
            work.push((r, state, k2));
            val = at(prev, kk - k2);
            kk -= k2;
        }
        let mut out = Vec::with_capacity(k);
        while let Some((u, state, k)) = work.pop() {
            self.expand(u, state, k, &mut out, &mut work);
        }
        out.sort_unstable();
        debug_assert_eq!(out.len(), k);
        Some(out)
    }

    fn expand(&self, u: Vertex, state: usize, k: usize, out: &mut Vec<Vertex>, work: &mut Vec<(Vertex, usize, usize)>) {
        let node = &self.nodes[u];
        // accumulator index: 0 = in, 1 = out_free, 2 = out_some
        let (mut acc, mut val) = match state {
            IN => (0, at(&node.fin[IN], k)),
            OUT_COVERED => (2, at(&node.fin[OUT_COVERED], k) - 1),
            _ => (1, at(&node.fin[OUT_FREE], k)),
        };
        let mut kk = k;
        for i in (1..node.acc.len()).rev() {
            let c = node.children[i - 1];
            let child = &self.nodes[c];
            let prev = &node.acc[i - 1];
            let cin = &child.fin[IN];
            let child_not_in = |k2: usize| {
                if at(&child.fin[OUT_COVERED], k2) <= at(&child.fin[OUT_FREE], k2) {
                    OUT_COVERED
                } else {
                    OUT_FREE
                }
            };
            let mut found = None;
            'split: for k2 in 0..=kk {
                let k1 = kk - k2;
                match acc {
                    0 => {
                        let pin = child.parent_in();
                        if at(&prev[0], k1).saturating_add(at(&pin, k2)) == val && at(&pin, k2) < INF {
                            let s = if at(cin, k2) == at(&pin, k2) {
                                IN
                            } else if at(&child.fin[OUT_COVERED], k2) == at(&pin, k2) {
                                OUT_COVERED
                            } else {
                                OUT_FREE
                            };
                            found = Some((0, k1, k2, s));
                            break 'split;
                        }
                    }
                    1 => {
                        let pnot = child.parent_out_not_in();
                        if at(&prev[1], k1).saturating_add(at(&pnot, k2)) == val && at(&pnot, k2) < INF {
                            found = Some((1, k1, k2, child_not_in(k2)));
                            break 'split;
                        }
                    }
                    _ => {
                        let pnot = child.parent_out_not_in();
                        let either = at(&pnot, k2).min(at(cin, k2));
                        if either < INF && at(&prev[2], k1).saturating_add(either) == val {
                            let s = if at(cin, k2) == either { IN } else { child_not_in(k2) };
                            found = Some((2, k1, k2, s));
                            break 'split;
                        }
                        if at(cin, k2) < INF && at(&prev[1], k1).saturating_add(at(cin, k2)) == val {
                            found = Some((1, k1, k2, IN));
                            break 'split;
                        }
                    }
                }
            }
            let (next_acc, k1, k2, s) = found.expect("dp tables are consistent");
            work.push((c, s, k2));
            val = at(&prev[next_acc], k1);
            acc = next_acc;
            kk = k1;
        }
        if acc == 0 {
            out.push(u);
        }
    }
}

/// Minimum ratio over sizes `1..=cap`; ties go to the smallest size.
/// Returns `(|∂A|, A)`.
pub fn min_boundary_ratio(g: &Graph, allowed: &[bool], cap: usize) -> Option<(usize, Vec<Vertex>)> {
    let t = tables(g, allowed, cap);
    let per = t.per_size();
    let mut best: Option<(u32, usize)> = None;
    for (k, b) in per.iter().enumerate().skip(1) {
        if let Some(b) = *b {
            let better = match best {
                None => true,
                Some((bb, bk)) => (b as u64) * (bk as u64) < (bb as u64) * (k as u64),
            };
            if better {
                best = Some((b, k));
            }
        }
    }
    let (b, k) = best?;
    Some((b as usize, t.witness(k).expect("size is feasible")))
}
