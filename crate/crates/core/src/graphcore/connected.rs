//! Enumeration of connected vertex sets.

use super::graph::{Graph, Vertex};
use crate::error::{Error, Result};

/// Visits every connected vertex set of size `≤ max_size` inside `allowed`
/// exactly once (extension-set enumeration keyed by the smallest vertex).
/// Fails once more than `budget` sets would be visited.
pub fn connected_subsets(
    g: &Graph,
    allowed: &[bool],
    max_size: usize,
    budget: u128,
    mut visit: impl FnMut(&[Vertex]),
) -> Result<u128> {
    struct State<'a> {
        g: &'a Graph,
        allowed: &'a [bool],
        max: usize,
        budget: u128,
        count: u128,
        in_sub: Vec<bool>,
        adj: Vec<u32>,
        sub: Vec<Vertex>,
    }
    fn extend<F: FnMut(&[Vertex])>(s: &mut State, mut ext: Vec<Vertex>, root: Vertex, visit: &mut F) -> Result<()> {
        s.count += 1;
        if s.count > s.budget {
            return Err(Error::BudgetExceeded {
                required: s.count,
                budget: s.budget,
            });
        }
        visit(&s.sub);
        if s.sub.len() == s.max {
            return Ok(());
        }
        while let Some(w) = ext.pop() {
            let mut next = ext.clone();
            for &u in s.g.neighbors(w) {
                if u > root && s.allowed[u] && !s.in_sub[u] && s.adj[u] == 0 && u != w {
                    next.push(u);
                }
            }
            s.in_sub[w] = true;
            s.sub.push(w);
            for &u in s.g.neighbors(w) {
                s.adj[u] += 1;
            }
            extend(s, next, root, visit)?;
            for &u in s.g.neighbors(w) {
                s.adj[u] -= 1;
            }
            s.sub.pop();
            s.in_sub[w] = false;
        }
        Ok(())
    }
    let mut s = State {
        g,
        allowed,
        max: max_size,
        budget,
        count: 0,
        in_sub: vec![false; g.len()],
        adj: vec![0; g.len()],
        sub: Vec::new(),
    };
    for v in 0..g.len() {
        if !allowed[v] || max_size == 0 {
            continue;
        }
        s.in_sub[v] = true;
        s.sub.push(v);
        for &u in g.neighbors(v) {
            s.adj[u] += 1;
        }
        let ext: Vec<Vertex> = g.neighbors(v).iter().copied().filter(|&u| u > v && allowed[u]).collect();
        extend(&mut s, ext, v, &mut visit)?;
        for &u in g.neighbors(v) {
            s.adj[u] -= 1;
        }
        s.sub.pop();
        s.in_sub[v] = false;
    }
    Ok(s.count)
}
