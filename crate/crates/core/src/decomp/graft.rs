//! Grafting one copy of an attachment graph onto every base vertex.

use std::collections::BTreeMap;

use super::spec::{DecompositionSpec, PieceCertificate};
use crate::error::{invalid, Error, Result};
use crate::graphcore::{Connectivity, Graph, Vertex, UNREACHABLE};
use crate::rational::ratio;
use crate::trees::{complementedness_index, pseudo_regularity_index, RootedTree};

/// Largest base for which distance preservation is checked pair by pair.
pub const ISOMETRY_CHECK_LIMIT: usize = 300;

/// Grafted graph together with which vertices came from where.
#[derive(Clone, Debug)]
pub struct GraftLayout {
    pub graph: Graph,
    /// Base vertex `i` keeps index `i`.
    pub base_len: usize,
    /// Copy attached at base vertex `k`, in attachment order; the port maps to `k`.
    pub copies: Vec<Vec<Vertex>>,
    /// Whether every pairwise base distance was compared.
    pub isometry_checked: bool,
}

/// One copy of `attachment` per base vertex, its `port` identified with that
/// vertex. Copy vertices are labelled `"{base}/{attachment}"`.
pub fn graft(base: &Graph, attachment: &Graph, port: Vertex) -> Result<Graph> {
    Ok(graft_layout(base, attachment, port)?.graph)
}

pub fn graft_layout(base: &Graph, attachment: &Graph, port: Vertex) -> Result<GraftLayout> {
    if !base.is_connected() || !attachment.is_connected() {
        return invalid("graft needs connected base and attachment graphs");
    }
    if port >= attachment.len() {
        return invalid(format!("port {port} is not an attachment vertex"));
    }
    let nb = base.len();
    let na = attachment.len();
    let mut labels: Vec<String> = base.labels().to_vec();
    let mut frontier: Vec<Vertex> = base.frontier();
    let mut copies = Vec::with_capacity(nb);
    let mut edges: Vec<(Vertex, Vertex)> = base.edges().collect();
    for k in 0..nb {
        let mut map = vec![0; na];
        for (a, slot) in map.iter_mut().enumerate() {
            if a == port {
                *slot = k;
                if attachment.is_frontier(a) && !base.is_frontier(k) {
                    frontier.push(k);
                }
                continue;
            }
            *slot = labels.len();
            if attachment.is_frontier(a) {
                frontier.push(labels.len());
            }
            labels.push(format!("{}/{}", base.label(k), attachment.label(a)));
        }
        edges.extend(attachment.edges().map(|(u, v)| (map[u], map[v])));
        copies.push(map);
    }
    let graph = Graph::build(labels, &edges, &frontier, Connectivity::Require)?;
    let mu = base.max_degree().max(attachment.max_degree());
    if graph.max_degree() > 2 * mu {
        return Err(Error::Falsified(format!(
            "grafted degree {} exceeds twice the input degree {mu}",
            graph.max_degree()
        )));
    }
    let isometry_checked = nb <= ISOMETRY_CHECK_LIMIT;
    if isometry_checked {
        for u in 0..nb {
            let db = base.distances_from(u);
            let dg = graph.distances_from(u);
            if let Some(v) = (0..nb).find(|&v| db[v] != dg[v] || dg[v] == UNREACHABLE) {
                return Err(Error::Falsified(format!(
                    "base distance {}–{} changes from {} to {}",
                    base.label(u),
                    base.label(v),
                    db[v],
                    dg[v]
                )));
            }
        }
    }
    Ok(GraftLayout {
        graph,
        base_len: nb,
        copies,
        isometry_checked,
    })
}

/// Grafts `tree` by its root onto `base` and returns the standard
/// decomposition: tree copies in `S₁` with tree-theorem certificates,
/// the base in `S₂`, `R = 0` and `r` the tree-theorem constant.
pub fn tree_graft_decomposition(base: &Graph, tree: &RootedTree) -> Result<(GraftLayout, DecompositionSpec)> {
    let k = pseudo_regularity_index(tree)?
        .k
        .ok_or_else(|| Error::InvalidInput("attached tree is not pseudo-regular".into()))?;
    let c = complementedness_index(tree)?.c;
    let r = ratio(1, (7 * k as i64 + 1) * c as i64 - 1);
    let layout = graft_layout(base, &tree.to_graph(), tree.root())?;
    let g = &layout.graph;
    let mut pieces = BTreeMap::new();
    let mut s1 = Vec::new();
    let mut certificates = BTreeMap::new();
    pieces.insert("base".to_string(), (0..layout.base_len).collect::<Vec<_>>());
    for (w, copy) in layout.copies.iter().enumerate() {
        let id = format!("tree@{}", g.label(w));
        let mut vs = copy.clone();
        vs.sort_unstable();
        pieces.insert(id.clone(), vs);
        s1.push(id.clone());
        certificates.insert(
            id,
            PieceCertificate::TreeTheorem {
                root: g.label(w).to_string(),
                lower: r.clone(),
            },
        );
    }
    let spec = DecompositionSpec::new(g.clone(), pieces, s1, vec!["base".to_string()], 0, r, certificates);
    Ok((layout, spec))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphcore::{grid_window, path_graph};
    use crate::trees::homogeneous_tree;

    #[test]
    fn vertex_count_and_degree() {
        let t = homogeneous_tree(3, 4);
        let base = grid_window(5, 5);
        let g = graft(&base, &t.to_graph(), 0).unwrap();
        assert_eq!(g.len(), 25 + 25 * (t.len() - 1));
        assert_eq!(g.max_degree(), 4 + 3);
        assert_eq!(g.frontier().len(), 16 + 25 * 24);
    }

    #[test]
    fn single_vertex_base_returns_attachment() {
        let base = Graph::new(vec!["w".into()], &[], &[]).unwrap();
        let a = path_graph(4);
        let g = graft(&base, &a, 1).unwrap();
        assert_eq!(g.len(), 4);
        assert_eq!(g.edge_count(), 3);
        assert_eq!(g.degree(0), 2);
    }

    #[test]
    fn rejects_disconnected_input() {
        let a = Graph::build(vec!["a".into(), "b".into()], &[], &[], Connectivity::Allow).unwrap();
        assert!(graft(&path_graph(3), &a, 0).is_err());
        assert!(graft(&path_graph(3), &path_graph(2), 5).is_err());
    }
}
