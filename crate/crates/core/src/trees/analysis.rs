use serde_json::{json, Value};

use super::tree::RootedTree;
use crate::error::{invalid, Error, Result};
use crate::graphcore::{
    admissible_mask, boundary, certificate_lower_bound, interior_cheeger, CheegerBound, Graph, Provenance, Vertex,
    VertexFunction, WindowSearch,
};
use crate::rational::{int, ratio, Rational};

/// `T∞` within the horizon: vertices on some root-to-live-leaf path, as a
/// membership mask. Empty when the tree has no live leaf.
pub fn complete_mask(t: &RootedTree) -> Vec<bool> {
    let mut on = vec![false; t.len()];
    for &v in t.bfs_order().iter().rev() {
        on[v] = t.is_live(v) || t.children(v).iter().any(|&c| on[c]);
    }
    on
}

/// Vertices of the maximal geodesically complete subtree, sorted.
pub fn maximal_complete_subtree(t: &RootedTree) -> Vec<Vertex> {
    let on = complete_mask(t);
    (0..t.len()).filter(|&v| on[v]).collect()
}

/// Pseudo-regularity of `T∞`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PseudoRegularity {
    /// Minimal `K ∈ [1, D − 1]` such that every `a ∈ T∞` with
    /// `1 ≤ depth(a) ≤ D − K` has two `T∞` descendants at depth `depth(a) + K`.
    pub k: Option<u32>,
    /// For each `K` that fails, the first violating vertex in breadth-first order.
    pub defects: Vec<(u32, Vertex)>,
}

/// Distance from each `T∞` vertex to the first depth where its `T∞`
/// descendants number at least two (`u32::MAX` if they never do).
fn first_branch(t: &RootedTree, on: &[bool]) -> Vec<u32> {
    let mut fb = vec![u32::MAX; t.len()];
    for &v in t.bfs_order().iter().rev() {
        if !on[v] {
            continue;
        }
        let kids: Vec<Vertex> = t.children(v).iter().copied().filter(|&c| on[c]).collect();
        fb[v] = match kids.len() {
            0 => u32::MAX,
            1 => fb[kids[0]].saturating_add(1),
            _ => 1,
        };
    }
    fb
}

pub fn pseudo_regularity_index(t: &RootedTree) -> Result<PseudoRegularity> {
    let on = complete_mask(t);
    if !on[0] {
        return Err(Error::EmptyWindow("tree has no live leaf, so T∞ is empty".into()));
    }
    let d = t.horizon();
    let fb = first_branch(t, &on);
    let order = t.bfs_order();
    let mut defects = Vec::new();
    let mut k = None;
    for kk in 1..d {
        let bad = order
            .iter()
            .copied()
            .find(|&a| on[a] && t.depth(a) >= 1 && t.depth(a) <= d - kk && fb[a] > kk);
        match bad {
            Some(a) => defects.push((kk, a)),
            None => {
                k = Some(kk);
                break;
            }
        }
    }
    Ok(PseudoRegularity { k, defects })
}

/// Complementedness of the tree relative to `T∞`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Complementedness {
    /// Largest component of the closure of `T ∖ T∞`, counting its attachment
    /// vertex; `1` when `T = T∞`.
    pub c: usize,
    /// Attachment vertex of a largest component (`None` when `T = T∞`).
    pub attachment: Option<Vertex>,
}

/// Components of the closure of `T ∖ T∞`: all dead vertices hanging below one
/// `T∞` vertex, together with that vertex.
pub fn complementedness_index(t: &RootedTree) -> Result<Complementedness> {
    let on = complete_mask(t);
    if !on[0] {
        return Err(Error::EmptyWindow("tree has no live leaf, so T∞ is empty".into()));
    }
    let mut size = vec![1usize; t.len()];
    for &v in t.bfs_order().iter().rev() {
        for &c in t.children(v) {
            size[v] += size[c];
        }
    }
    let mut best = Complementedness { c: 1, attachment: None };
    for &u in &t.bfs_order() {
        if !on[u] {
            continue;
        }
        let dead: usize = t.children(u).iter().filter(|&&c| !on[c]).map(|&c| size[c]).sum();
        if dead > 0 && dead + 1 > best.c {
            best = Complementedness {
                c: dead + 1,
                attachment: Some(u),
            };
        }
    }
    Ok(best)
}

/// Non-essential and essential boundary of a connected set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EssentialBoundary {
    pub non_essential: Vec<Vertex>,
    pub essential: Vec<Vertex>,
    /// Vertices of `A` adjacent to the essential boundary.
    pub essential_inner: Vec<Vertex>,
}

pub fn essential_boundary(t: &RootedTree, a: &[Vertex]) -> Result<EssentialBoundary> {
    let g = t.to_graph();
    essential_boundary_in(t, &g, a)
}

pub(crate) fn essential_boundary_in(t: &RootedTree, g: &Graph, a: &[Vertex]) -> Result<EssentialBoundary> {
    let a = g.check_set(a)?;
    let (sub, _) = g.induced(&a);
    if !sub.is_connected() {
        return invalid("the induced subgraph G(A) is disconnected");
    }
    let bd = boundary(g, &a)?;
    let top = a.iter().map(|&v| t.depth(v)).min().unwrap();
    let non_essential: Vec<Vertex> = bd.iter().copied().filter(|&w| t.depth(w) < top).collect();
    let essential: Vec<Vertex> = bd.iter().copied().filter(|&w| t.depth(w) >= top).collect();
    let mut is_e = vec![false; t.len()];
    for &w in &essential {
        is_e[w] = true;
    }
    let essential_inner = a
        .iter()
        .copied()
        .filter(|&x| g.neighbors(x).iter().any(|&y| is_e[y]))
        .collect();
    Ok(EssentialBoundary {
        non_essential,
        essential,
        essential_inner,
    })
}

/// Bounds for `h(T)` with the data behind them.
#[derive(Clone, Debug, PartialEq)]
pub struct TreeBounds {
    pub bound: CheegerBound,
    /// `1/((7K+1)C − 1)` when both constants exist.
    pub theorem_lower: Option<Rational>,
    /// `h∞/(C + (C−1)h∞)` from a function certificate `h∞` on `T∞`.
    pub sandwich_lower: Option<Rational>,
    /// Function certificate on `T` itself with `f = depth`.
    pub depth_certificate: Option<Rational>,
    /// Window sets below defect vertices with their ratios (upper-bound evidence).
    pub witness_family: Vec<(u32, Vec<Vertex>, Rational)>,
}

/// Lower bound from the tree theorem, upper bound from the exact window
/// search on the truncation.
pub fn tree_cheeger_bounds(t: &RootedTree, search: Option<WindowSearch>) -> Result<TreeBounds> {
    let pr = pseudo_regularity_index(t)?;
    let cm = complementedness_index(t)?;
    let g = t.to_graph();
    let d = t.horizon();
    let mask = admissible_mask(&g);

    let theorem_lower = pr.k.map(|k| ratio(1, ((7 * k as i64 + 1) * cm.c as i64) - 1));

    let on = complete_mask(t);
    let sandwich_lower = if pr.k.is_some() {
        let tinf = t.restrict(&on)?;
        let tg = tinf.to_graph();
        let depth = VertexFunction::from_fn(&tg, |v| int(tinf.depth(v) as i64));
        match certificate_lower_bound(&tg, &depth) {
            Ok(c) => c.bound().map(|b| {
                let h = b.lower.clone();
                let c = int(cm.c as i64);
                h.clone() / (c.clone() + (c - int(1)) * h)
            }),
            Err(_) => None,
        }
    } else {
        None
    };
    let depth_fn = VertexFunction::from_fn(&g, |v| int(t.depth(v) as i64));
    let depth_certificate = certificate_lower_bound(&g, &depth_fn)
        .ok()
        .and_then(|c| c.bound().map(|b| b.lower.clone()));

    let mut lower = CheegerBound::trivial();
    if let Some(th) = &theorem_lower {
        lower = CheegerBound::lower_only(
            th.clone(),
            Provenance::TreeTheorem {
                k: pr.k.unwrap(),
                c: cm.c,
                horizon: d,
            },
            true,
        );
    }
    let candidate = |value: &Option<Rational>, current: &CheegerBound| value.as_ref().is_some_and(|v| *v > current.lower);
    if candidate(&sandwich_lower, &lower) || candidate(&depth_certificate, &lower) {
        // re-run the winning certificate to keep its witness
        if depth_certificate.as_ref() >= sandwich_lower.as_ref() {
            if let Some(b) = certificate_lower_bound(&g, &depth_fn)?.bound() {
                lower = b.clone();
            }
        } else if let Some(th) = &sandwich_lower {
            lower = CheegerBound::lower_only(
                th.clone(),
                Provenance::TreeTheorem {
                    k: pr.k.unwrap_or(0),
                    c: cm.c,
                    horizon: d,
                },
                true,
            )
            .with_region("sandwich h(T∞)/(C+(C−1)h(T∞)) with a depth certificate on T∞");
        }
    }

    let upper = {
        let m = mask.iter().filter(|&&x| x).count();
        if m == 0 {
            None
        } else {
            let s = search.unwrap_or_else(|| WindowSearch::new(m));
            Some(interior_cheeger(&g, s)?)
        }
    };

    let mut witness_family = Vec::new();
    if pr.k.is_none() {
        for &(k, a) in &pr.defects {
            let s = t.depth(a);
            let mut chain = vec![a];
            let mut cur = a;
            for _ in 1..k {
                match t.children(cur).iter().copied().find(|&c| on[c]) {
                    Some(c) => {
                        chain.push(c);
                        cur = c;
                    }
                    None => break,
                }
            }
            if chain.len() as u32 == k && s + k - 1 + 2 <= d && chain.iter().all(|&v| mask[v]) {
                let b = boundary(&g, &chain)?;
                let r = ratio(b.len() as i64, k as i64);
                chain.sort_unstable();
                witness_family.push((k, chain, r));
            }
        }
    }

    let mut bound = lower.with_region(format!("tree of horizon {d}"));
    if let Some(u) = upper {
        bound = bound.meet(u)?;
    }
    Ok(TreeBounds {
        bound,
        theorem_lower,
        sandwich_lower,
        depth_certificate,
        witness_family,
    })
}

/// Re-checks a tree-theorem provenance against the tree.
pub fn verify_tree_theorem(t: &RootedTree, p: &Provenance) -> Result<()> {
    if let Provenance::TreeTheorem { k, c, horizon } = p {
        let pr = pseudo_regularity_index(t)?;
        let cm = complementedness_index(t)?;
        if *horizon != t.horizon() || cm.c != *c || (pr.k != Some(*k) && *k != 0) {
            return Err(Error::Falsified(format!(
                "tree constants do not recompute: claimed K={k}, C={c}, found K={:?}, C={}",
                pr.k, cm.c
            )));
        }
    }
    Ok(())
}

/// Full analysis report.
#[derive(Clone, Debug, PartialEq)]
pub struct TreeAnalysis {
    pub horizon: u32,
    pub t_infty: Vec<Vertex>,
    pub pseudo_regularity: PseudoRegularity,
    pub complementedness: Complementedness,
    pub bounds: TreeBounds,
}

pub fn analyze(t: &RootedTree, search: Option<WindowSearch>) -> Result<TreeAnalysis> {
    Ok(TreeAnalysis {
        horizon: t.horizon(),
        t_infty: maximal_complete_subtree(t),
        pseudo_regularity: pseudo_regularity_index(t)?,
        complementedness: complementedness_index(t)?,
        bounds: tree_cheeger_bounds(t, search)?,
    })
}

impl TreeAnalysis {
    pub fn to_json(&self, t: &RootedTree) -> Value {
        let g = t.to_graph();
        let lab = |v: Vertex| t.label(v).to_string();
        json!({
            "horizon": self.horizon,
            "t_infty_size": self.t_infty.len(),
            "k": self.pseudo_regularity.k,
            "k_defects": self.pseudo_regularity.defects.iter()
                .map(|&(k, a)| json!({"k": k, "vertex": lab(a)})).collect::<Vec<_>>(),
            "c": self.complementedness.c,
            "c_attachment": self.complementedness.attachment.map(lab),
            "theorem_lower": self.bounds.theorem_lower.as_ref().map(|r| r.to_string()),
            "sandwich_lower": self.bounds.sandwich_lower.as_ref().map(|r| r.to_string()),
            "depth_certificate": self.bounds.depth_certificate.as_ref().map(|r| r.to_string()),
            "witness_family": self.bounds.witness_family.iter().map(|(k, set, r)| {
                let mut ls = g.set_labels(set);
                ls.sort();
                json!({"k": k, "ratio": r.to_string(), "set": ls})
            }).collect::<Vec<_>>(),
            "bound": self.bounds.bound.to_json(Some(&g)),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::trees::generators::*;

    #[test]
    fn homogeneous_is_one_regular() {
        let t = homogeneous_tree(3, 4);
        assert_eq!(pseudo_regularity_index(&t).unwrap().k, Some(1));
        assert_eq!(complementedness_index(&t).unwrap().c, 1);
        assert_eq!(maximal_complete_subtree(&t).len(), t.len());
    }

    #[test]
    fn even_branching_needs_two() {
        let t = layered_tree(6, |d| if d % 2 == 0 { 2 } else { 1 });
        let pr = pseudo_regularity_index(&t).unwrap();
        assert_eq!(pr.k, Some(2));
        assert_eq!(pr.defects.len(), 1);
        assert_eq!(t.depth(pr.defects[0].1), 1);
    }

    #[test]
    fn growing_chain_has_defects() {
        let t = growing_chain(8);
        let pr = pseudo_regularity_index(&t).unwrap();
        assert_eq!(pr.k, None);
        assert_eq!(pr.defects.len(), 7);
        let b = tree_cheeger_bounds(&t, None).unwrap();
        assert_eq!(b.bound.lower, int(0));
        for (k, set, r) in &b.witness_family {
            assert_eq!(*r, ratio(2, *k as i64));
            assert_eq!(set.len(), *k as usize);
        }
        assert_eq!(b.witness_family.len(), 6);
    }

    #[test]
    fn comb_components() {
        let t = comb(8, 3);
        assert_eq!(maximal_complete_subtree(&t).len(), 9);
        let c = complementedness_index(&t).unwrap();
        assert_eq!(c.c, 4);
        assert_eq!(c.attachment, Some(0));
    }

    #[test]
    fn single_dead_edge() {
        let base = homogeneous_tree(3, 3);
        let t = {
            let mut labels = base.labels().to_vec();
            let mut parents: Vec<Option<usize>> = (0..base.len()).map(|v| base.parent(v)).collect();
            let mut live: Vec<bool> = (0..base.len()).map(|v| base.is_live(v)).collect();
            labels.push("dead".into());
            parents.push(Some(1));
            live.push(false);
            RootedTree::from_parents(labels, parents, live).unwrap()
        };
        assert_eq!(complementedness_index(&t).unwrap().c, 2);
    }

    #[test]
    fn essential_boundary_example() {
        let t = homogeneous_tree(3, 4);
        let a = t.vertex("r.0").unwrap();
        let set: Vec<usize> = std::iter::once(a).chain(t.children(a).iter().copied()).collect();
        let e = essential_boundary(&t, &set).unwrap();
        assert_eq!(e.non_essential, vec![0]);
        assert_eq!(e.essential.len(), 4);
        assert_eq!(e.essential_inner.len(), 2);
        let with_root = essential_boundary(&t, &[0]).unwrap();
        assert!(with_root.non_essential.is_empty());
        assert!(essential_boundary(&t, &t.children(a).to_vec()).is_err());
    }

    #[test]
    fn theorem_values() {
        let t = homogeneous_tree(3, 5);
        let b = tree_cheeger_bounds(&t, None).unwrap();
        assert_eq!(b.theorem_lower, Some(ratio(1, 7)));
        assert_eq!(b.bound.lower, ratio(1, 7));
        verify_tree_theorem(&t, &b.bound.lower_witness).unwrap();
        assert!(b.bound.upper.clone().unwrap() >= b.bound.lower);
    }
}
