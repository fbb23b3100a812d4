use std::collections::{HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

pub type Vertex = usize;

/// Sentinel distance for unreachable vertices.
pub const UNREACHABLE: u32 = u32::MAX;

/// Whether a constructor accepts disconnected graphs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Connectivity {
    Require,
    Allow,
}

/// Finite simple undirected graph with unit edges and an optional frontier.
///
/// Vertices are indexed `0..n` in declaration order; adjacency lists are
/// sorted. The frontier marks where an infinite ambient graph was cut.
#[derive(Clone, Debug)]
pub struct Graph {
    labels: Vec<String>,
    index: HashMap<String, Vertex>,
    adj: Vec<Vec<Vertex>>,
    frontier: Vec<bool>,
    max_degree: usize,
    edge_count: usize,
}

impl Graph {
    /// Builds a connected graph from index edges.
    pub fn new(labels: Vec<String>, edges: &[(Vertex, Vertex)], frontier: &[Vertex]) -> Result<Self> {
        Self::build(labels, edges, frontier, Connectivity::Require)
    }

    pub fn build(
        labels: Vec<String>,
        edges: &[(Vertex, Vertex)],
        frontier: &[Vertex],
        connectivity: Connectivity,
    ) -> Result<Self> {
        let n = labels.len();
        let mut index = HashMap::with_capacity(n);
        for (i, l) in labels.iter().enumerate() {
            if index.insert(l.clone(), i).is_some() {
                return invalid(format!("duplicate vertex {l:?}"));
            }
        }
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u >= n || v >= n {
                return invalid(format!("edge ({u},{v}) uses an undeclared vertex"));
            }
            if u == v {
                return invalid(format!("self-loop at {:?}", labels[u]));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for (u, list) in adj.iter_mut().enumerate() {
            list.sort_unstable();
            if list.windows(2).any(|w| w[0] == w[1]) {
                return invalid(format!("duplicate edge at {:?}", labels[u]));
            }
        }
        let mut fr = vec![false; n];
        for &v in frontier {
            if v >= n {
                return invalid(format!("frontier vertex {v} is undeclared"));
            }
            fr[v] = true;
        }
        let max_degree = adj.iter().map(Vec::len).max().unwrap_or(0);
        let g = Graph {
            labels,
            index,
            adj,
            frontier: fr,
            max_degree,
            edge_count: edges.len(),
        };
        if connectivity == Connectivity::Require && !g.is_connected() {
            return invalid("graph is disconnected");
        }
        Ok(g)
    }

    /// Builds a graph from labelled edges, in the order vertices are declared.
    pub fn from_labels(
        vertices: &[impl AsRef<str>],
        edges: &[(impl AsRef<str>, impl AsRef<str>)],
        frontier: &[impl AsRef<str>],
        connectivity: Connectivity,
    ) -> Result<Self> {
        let labels: Vec<String> = vertices.iter().map(|v| v.as_ref().to_string()).collect();
        let idx: HashMap<&str, usize> = labels.iter().enumerate().map(|(i, l)| (l.as_str(), i)).collect();
        let look = |s: &str| {
            idx.get(s)
                .copied()
                .ok_or_else(|| Error::InvalidInput(format!("unknown vertex {s:?}")))
        };
        let mut e = Vec::with_capacity(edges.len());
        for (a, b) in edges {
            e.push((look(a.as_ref())?, look(b.as_ref())?));
        }
        let mut f = Vec::with_capacity(frontier.len());
        for v in frontier {
            f.push(look(v.as_ref())?);
        }
        Self::build(labels, &e, &f, connectivity)
    }

    /// Graph with vertices labelled `"0".."n-1"`.
    pub fn from_edges(n: usize, edges: &[(Vertex, Vertex)], frontier: &[Vertex]) -> Result<Self> {
        Self::new((0..n).map(|i| i.to_string()).collect(), edges, frontier)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, v: Vertex) -> &str {
        &self.labels[v]
    }

    pub fn vertex(&self, label: &str) -> Option<Vertex> {
        self.index.get(label).copied()
    }

    pub fn vertex_or_err(&self, label: &str) -> Result<Vertex> {
        self.vertex(label)
            .ok_or_else(|| Error::InvalidInput(format!("unknown vertex {label:?}")))
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    /// μ, the maximum degree.
    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, l)| l.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn is_frontier(&self, v: Vertex) -> bool {
        self.frontier[v]
    }

    pub fn frontier(&self) -> Vec<Vertex> {
        (0..self.len()).filter(|&v| self.frontier[v]).collect()
    }

    pub fn has_frontier(&self) -> bool {
        self.frontier.iter().any(|&f| f)
    }

    /// Same graph with a different frontier.
    pub fn with_frontier(&self, frontier: &[Vertex]) -> Result<Self> {
        let mut g = self.clone();
        g.frontier = vec![false; self.len()];
        for &v in frontier {
            if v >= self.len() {
                return invalid(format!("frontier vertex {v} is undeclared"));
            }
            g.frontier[v] = true;
        }
        Ok(g)
    }

    /// BFS distances from `src`; unreachable vertices get [`UNREACHABLE`].
    pub fn distances_from(&self, src: Vertex) -> Vec<u32> {
        self.distances_from_set(&[src])
    }

    /// BFS distances to the nearest vertex of `sources`.
    pub fn distances_from_set(&self, sources: &[Vertex]) -> Vec<u32> {
        let mut dist = vec![UNREACHABLE; self.len()];
        let mut q = VecDeque::new();
        for &s in sources {
            if dist[s] != 0 {
                dist[s] = 0;
                q.push_back(s);
            }
        }
        while let Some(u) = q.pop_front() {
            let du = dist[u] + 1;
            for &w in &self.adj[u] {
                if dist[w] == UNREACHABLE {
                    dist[w] = du;
                    q.push_back(w);
                }
            }
        }
        dist
    }

    /// All-pairs BFS distances.
    pub fn distance_matrix(&self) -> DistanceMatrix {
        use rayon::prelude::*;
        let n = self.len();
        let rows: Vec<Vec<u32>> = (0..n).into_par_iter().map(|v| self.distances_from(v)).collect();
        DistanceMatrix {
            n,
            d: rows.into_iter().flatten().collect(),
        }
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<Vertex>> {
        let mut comp = vec![usize::MAX; self.len()];
        let mut out = Vec::new();
        for s in 0..self.len() {
            if comp[s] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut members = vec![s];
            comp[s] = id;
            let mut i = 0;
            while i < members.len() {
                let u = members[i];
                i += 1;
                for &w in &self.adj[u] {
                    if comp[w] == usize::MAX {
                        comp[w] = id;
                        members.push(w);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.len() <= 1 || self.components().len() == 1
    }

    /// True when the graph has no cycle.
    pub fn is_forest(&self) -> bool {
        self.edge_count + self.components().len() == self.len()
    }

    /// Induced subgraph on `vertices` (kept in the given order). Frontier
    /// markers are inherited. Returns the subgraph and the map back to `self`.
    pub fn induced(&self, vertices: &[Vertex]) -> (Graph, Vec<Vertex>) {
        let mut local = vec![usize::MAX; self.len()];
        for (i, &v) in vertices.iter().enumerate() {
            local[v] = i;
        }
        let mut edges = Vec::new();
        for (i, &v) in vertices.iter().enumerate() {
            for &w in &self.adj[v] {
                let j = local[w];
                if j != usize::MAX && j > i {
                    edges.push((i, j));
                }
            }
        }
        let labels = vertices.iter().map(|&v| self.labels[v].clone()).collect();
        let frontier: Vec<usize> = (0..vertices.len()).filter(|&i| self.frontier[vertices[i]]).collect();
        let g = Graph::build(labels, &edges, &frontier, Connectivity::Allow).expect("induced subgraph is simple");
        (g, vertices.to_vec())
    }

    /// Validates a vertex set and returns it sorted and deduplicated.
    pub fn check_set(&self, a: &[Vertex]) -> Result<Vec<Vertex>> {
        if a.is_empty() {
            return invalid("vertex set is empty");
        }
        let mut s = a.to_vec();
        s.sort_unstable();
        s.dedup();
        if let Some(&v) = s.last() {
            if v >= self.len() {
                return invalid(format!("vertex {v} is not in the graph"));
            }
        }
        Ok(s)
    }

    pub fn set_labels(&self, a: &[Vertex]) -> Vec<String> {
        a.iter().map(|&v| self.labels[v].clone()).collect()
    }

    pub fn set_from_labels(&self, labels: &[impl AsRef<str>]) -> Result<Vec<Vertex>> {
        labels.iter().map(|l| self.vertex_or_err(l.as_ref())).collect()
    }
}

/// Dense all-pairs distance table.
#[derive(Clone, Debug)]
pub struct DistanceMatrix {
    n: usize,
    d: Vec<u32>,
}

impl DistanceMatrix {
    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    pub fn get(&self, u: Vertex, v: Vertex) -> u32 {
        self.d[u * self.n + v]
    }

    pub fn row(&self, u: Vertex) -> &[u32] {
        &self.d[u * self.n..(u + 1) * self.n]
    }

    pub fn diameter(&self) -> u32 {
        self.d.iter().copied().filter(|&x| x != UNREACHABLE).max().unwrap_or(0)
    }
}

/// On-disk graph document. Field order is alphabetical so that serialization
/// has sorted keys.
#[derive(Clone, Debug, Default, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct GraphFile {
    pub edges: Vec<[String; 2]>,
    #[serde(default)]
    pub frontier: Vec<String>,
    pub vertices: Vec<String>,
}

impl GraphFile {
    pub fn to_graph(&self, connectivity: Connectivity) -> Result<Graph> {
        let edges: Vec<(&str, &str)> = self.edges.iter().map(|[a, b]| (a.as_str(), b.as_str())).collect();
        Graph::from_labels(&self.vertices, &edges, &self.frontier, connectivity)
    }

    /// Canonical document: vertices, frontier and edges sorted, each edge
    /// written with its smaller label first.
    pub fn from_graph(g: &Graph) -> Self {
        let mut vertices = g.labels().to_vec();
        vertices.sort();
        let mut frontier: Vec<String> = g.frontier().into_iter().map(|v| g.label(v).to_string()).collect();
        frontier.sort();
        let mut edges: Vec<[String; 2]> = g
            .edges()
            .map(|(u, v)| {
                let (a, b) = (g.label(u).to_string(), g.label(v).to_string());
                if a <= b {
                    [a, b]
                } else {
                    [b, a]
                }
            })
            .collect();
        edges.sort();
        GraphFile { edges, frontier, vertices }
    }

    pub fn parse(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("serializable");
        s.push('\n');
        s
    }
}

/// Reads a graph document from disk.
pub fn load_graph(path: &std::path::Path, connectivity: Connectivity) -> Result<Graph> {
    let text = std::fs::read_to_string(path)?;
    GraphFile::parse(&text)?.to_graph(connectivity)
}

/// Path `0 – 1 – … – (n-1)` with labels `"1".."n"`.
pub fn path_graph(n: usize) -> Graph {
    let labels = (1..=n).map(|i| i.to_string()).collect();
    let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    Graph::new(labels, &edges, &[]).expect("path")
}

/// `w × h` grid with labels `"x,y"`.
pub fn grid_graph(w: usize, h: usize) -> Graph {
    let id = |x: usize, y: usize| y * w + x;
    let labels = (0..h).flat_map(|y| (0..w).map(move |x| format!("{x},{y}"))).collect();
    let mut edges = Vec::new();
    for y in 0..h {
        for x in 0..w {
            if x + 1 < w {
                edges.push((id(x, y), id(x + 1, y)));
            }
            if y + 1 < h {
                edges.push((id(x, y), id(x, y + 1)));
            }
        }
    }
    Graph::new(labels, &edges, &[]).expect("grid")
}

/// `w × h` grid whose border is the frontier: a window onto `ℤ²`.
pub fn grid_window(w: usize, h: usize) -> Graph {
    let g = grid_graph(w, h);
    let border: Vec<Vertex> = (0..h)
        .flat_map(|y| (0..w).map(move |x| (x, y)))
        .filter(|&(x, y)| x == 0 || y == 0 || x + 1 == w || y + 1 == h)
        .map(|(x, y)| y * w + x)
        .collect();
    g.with_frontier(&border).expect("border vertices exist")
}

/// Cycle of length `n` (`n ≥ 3`), labels `"0".."n-1"`.
pub fn cycle_graph(n: usize) -> Graph {
    let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Graph::from_edges(n, &edges, &[]).expect("cycle")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_input() {
        assert!(Graph::from_edges(2, &[(0, 0)], &[]).is_err());
        assert!(Graph::from_edges(2, &[(0, 1), (1, 0)], &[]).is_err());
        assert!(Graph::from_edges(2, &[(0, 2)], &[]).is_err());
        assert!(Graph::from_edges(3, &[(0, 1)], &[]).is_err());
        assert!(Graph::build(vec!["a".into(), "a".into()], &[], &[], Connectivity::Allow).is_err());
        assert!(Graph::build(vec!["a".into(), "b".into()], &[], &[], Connectivity::Allow).is_ok());
    }

    #[test]
    fn bfs_and_degree() {
        let g = path_graph(5);
        assert_eq!(g.distances_from(0), vec![0, 1, 2, 3, 4]);
        assert_eq!(g.max_degree(), 2);
        assert!(g.is_forest());
        assert!(!cycle_graph(4).is_forest());
        assert_eq!(grid_graph(3, 3).distance_matrix().diameter(), 4);
    }

    #[test]
    fn file_round_trip_is_canonical() {
        let text = r#"{"vertices":["b","a","c"],"edges":[["c","a"],["b","a"]],"frontier":["c"]}"#;
        let g = GraphFile::parse(text).unwrap().to_graph(Connectivity::Require).unwrap();
        let out = GraphFile::from_graph(&g);
        assert_eq!(out.vertices, vec!["a", "b", "c"]);
        assert_eq!(out.edges, vec![["a".to_string(), "b".to_string()], ["a".to_string(), "c".to_string()]]);
        let again = GraphFile::parse(&out.to_json()).unwrap();
        assert_eq!(again, out);
        assert_eq!(again.to_json(), out.to_json());
    }

    #[test]
    fn induced_keeps_frontier() {
        let g = path_graph(5).with_frontier(&[4]).unwrap();
        let (h, map) = g.induced(&[3, 4]);
        assert_eq!(h.frontier(), vec![1]);
        assert_eq!(map, vec![3, 4]);
        assert_eq!(h.edge_count(), 1);
    }
}
