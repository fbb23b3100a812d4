//! Decomposition documents and their validation.

use std::collections::{BTreeMap, VecDeque};
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::bounds::{bound_general, bound_strong};
use crate::error::{invalid, Error, Result};
use crate::graphcore::{
    certificate_lower_bound, load_graph, CheegerBound, Connectivity, Graph, Provenance, Vertex, VertexFunction,
};
use crate::rational::{self, Rational};
use crate::trees::{complementedness_index, pseudo_regularity_index, RootedTree};

/// Re-checkable lower bound `h ≥ lower` for a piece or component.
#[derive(Clone, Debug, PartialEq)]
pub enum PieceCertificate {
    /// Tree theorem on the piece rooted at `root`; leaves at maximal depth
    /// that lie on the ambient frontier are live.
    TreeTheorem { root: String, lower: Rational },
    /// Function certificate `c₂/(μ c₁)`; `f` maps labels to values.
    Function { f: Value, lower: Rational },
}

impl PieceCertificate {
    pub fn lower(&self) -> &Rational {
        match self {
            PieceCertificate::TreeTheorem { lower, .. } | PieceCertificate::Function { lower, .. } => lower,
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            PieceCertificate::TreeTheorem { root, lower } => json!({
                "kind": "tree-theorem", "lower": lower.to_string(), "root": root,
            }),
            PieceCertificate::Function { f, lower } => json!({
                "f": f, "kind": "function", "lower": lower.to_string(),
            }),
        }
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let kind = v.get("kind").and_then(Value::as_str).unwrap_or("");
        let lower = match v.get("lower").and_then(Value::as_str) {
            Some(s) => rational::parse(s)?,
            None => return invalid("certificate needs a \"lower\" string"),
        };
        match kind {
            "tree-theorem" => {
                let root = v
                    .get("root")
                    .and_then(Value::as_str)
                    .ok_or_else(|| Error::InvalidInput("tree certificate needs a root".into()))?;
                Ok(PieceCertificate::TreeTheorem {
                    root: root.to_string(),
                    lower,
                })
            }
            "function" => {
                let f = v
                    .get("f")
                    .cloned()
                    .ok_or_else(|| Error::InvalidInput("function certificate needs f".into()))?;
                Ok(PieceCertificate::Function { f, lower })
            }
            other => invalid(format!("unknown certificate kind {other:?}")),
        }
    }

    /// Recomputes the certificate on `piece` (an induced subgraph carrying
    /// the ambient frontier). Returns the recomputed bound.
    pub fn verify(&self, piece: &Graph) -> std::result::Result<Rational, String> {
        match self {
            PieceCertificate::TreeTheorem { root, lower } => {
                let t = rooted_piece(piece, root)?;
                let k = pseudo_regularity_index(&t)
                    .map_err(|e| e.to_string())?
                    .k
                    .ok_or("piece is not pseudo-regular")?;
                let c = complementedness_index(&t).map_err(|e| e.to_string())?.c;
                let again = rational::ratio(1, (7 * k as i64 + 1) * c as i64 - 1);
                if *lower > again {
                    return Err(format!("claimed {lower} but the tree theorem gives {again} (K={k}, C={c})"));
                }
                Ok(again)
            }
            PieceCertificate::Function { f, lower } => {
                let f = VertexFunction::from_json(piece, f).map_err(|e| e.to_string())?;
                let cert = certificate_lower_bound(piece, &f).map_err(|e| e.to_string())?;
                let b = cert.bound().ok_or("function certifies nothing (Δf ≤ 0 somewhere)")?;
                if *lower > b.lower {
                    return Err(format!("claimed {lower} but the function gives {}", b.lower));
                }
                Ok(b.lower.clone())
            }
        }
    }
}

/// Rebuilds a rooted tree from a tree-shaped piece.
fn rooted_piece(piece: &Graph, root: &str) -> std::result::Result<RootedTree, String> {
    let r = piece.vertex(root).ok_or_else(|| format!("root {root:?} is not in the piece"))?;
    if !piece.is_connected() || piece.edge_count() + 1 != piece.len() {
        return Err("piece is not a tree".into());
    }
    let n = piece.len();
    let mut order = vec![r];
    let mut parent = vec![usize::MAX; n];
    let mut depth = vec![0u32; n];
    let mut seen = vec![false; n];
    seen[r] = true;
    let mut queue = VecDeque::from([r]);
    while let Some(u) = queue.pop_front() {
        for &w in piece.neighbors(u) {
            if !seen[w] {
                seen[w] = true;
                parent[w] = u;
                depth[w] = depth[u] + 1;
                order.push(w);
                queue.push_back(w);
            }
        }
    }
    let mut pos = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let max_depth = depth.iter().copied().max().unwrap_or(0);
    let labels = order.iter().map(|&v| piece.label(v).to_string()).collect();
    let parents = order
        .iter()
        .map(|&v| if v == r { None } else { Some(pos[parent[v]]) })
        .collect();
    let live = order
        .iter()
        .map(|&v| v != r && piece.degree(v) == 1 && depth[v] == max_depth && piece.is_frontier(v))
        .collect();
    RootedTree::from_parents(labels, parents, live).map_err(|e| e.to_string())
}

/// Pieces, partition, parameters and certificates over an ambient graph.
#[derive(Clone, Debug)]
pub struct DecompositionSpec {
    pub ambient: Graph,
    /// Piece id → sorted ambient vertices.
    pub pieces: BTreeMap<String, Vec<Vertex>>,
    pub s1: Vec<String>,
    pub s2: Vec<String>,
    pub big_r: u32,
    pub r: Rational,
    /// Keys are piece ids for `S₁` and `"{s}#{j}"` for components of `S₂`
    /// pieces, `j` counting components by smallest ambient vertex.
    pub certificates: BTreeMap<String, PieceCertificate>,
}

impl DecompositionSpec {
    pub fn new(
        ambient: Graph,
        pieces: BTreeMap<String, Vec<Vertex>>,
        s1: Vec<String>,
        s2: Vec<String>,
        big_r: u32,
        r: Rational,
        certificates: BTreeMap<String, PieceCertificate>,
    ) -> Self {
        DecompositionSpec {
            ambient,
            pieces,
            s1,
            s2,
            big_r,
            r,
            certificates,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Role {
    S1,
    S2,
}

/// One violated clause with a witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub clause: &'static str,
    pub witness: String,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ComponentReport {
    pub key: String,
    pub size: usize,
    pub certified: Option<Rational>,
    pub crosses_frontier: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PieceReport {
    pub id: String,
    pub role: Option<Role>,
    pub size: usize,
    /// Verified certificate value for `S₁` pieces.
    pub certified: Option<Rational>,
    /// `|V_s|` and `|W_s|` for `S₂` pieces.
    pub v_s: usize,
    pub w_s: usize,
    pub components: Vec<ComponentReport>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
    pub pieces: Vec<PieceReport>,
    /// `V(W_s) = V(Γ_s)` for every `s ∈ S₂`.
    pub strong: bool,
    /// First `S₂` vertex outside its `W_s`, when not strong.
    pub uncovered: Option<Vertex>,
    pub mu: usize,
}

impl ValidationReport {
    pub fn valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn to_json(&self, g: &Graph) -> Value {
        let role = |r: Option<Role>| match r {
            Some(Role::S1) => "S1",
            Some(Role::S2) => "S2",
            None => "none",
        };
        json!({
            "mu": self.mu,
            "pieces": self.pieces.iter().map(|p| json!({
                "certified": p.certified.as_ref().map(|c| c.to_string()),
                "components": p.components.iter().map(|c| json!({
                    "certified": c.certified.as_ref().map(|x| x.to_string()),
                    "crosses_frontier": c.crosses_frontier,
                    "key": c.key,
                    "size": c.size,
                })).collect::<Vec<_>>(),
                "id": p.id,
                "role": role(p.role),
                "size": p.size,
                "v_s": p.v_s,
                "w_s": p.w_s,
            })).collect::<Vec<_>>(),
            "strong": self.strong,
            "uncovered": self.uncovered.map(|v| g.label(v).to_string()),
            "valid": self.valid(),
            "violations": self.violations.iter()
                .map(|v| json!({"clause": v.clause, "witness": v.witness})).collect::<Vec<_>>(),
        })
    }
}

fn violation(clause: &'static str, witness: impl Into<String>) -> Violation {
    Violation {
        clause,
        witness: witness.into(),
    }
}

/// Checks every clause of the definition and re-verifies all certificates.
/// `V_s`, `W_s` and the components are recomputed from the ambient graph,
/// the pieces and `R`; balls are taken in the piece's own metric.
pub fn validate(spec: &DecompositionSpec) -> ValidationReport {
    let g = &spec.ambient;
    let n = g.len();
    let mut violations = Vec::new();
    let ids: Vec<&String> = spec.pieces.keys().collect();

    let mut member: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, id) in ids.iter().enumerate() {
        let vs = &spec.pieces[*id];
        if vs.is_empty() {
            violations.push(violation("non-empty piece", id.as_str()));
        }
        for &v in vs {
            if v < n {
                member[v].push(i);
            }
        }
    }
    if let Some(v) = (0..n).find(|&v| member[v].is_empty()) {
        violations.push(violation("cover", format!("vertex {} lies in no piece", g.label(v))));
    }
    for (u, v) in g.edges() {
        let shared: Vec<usize> = member[u].iter().copied().filter(|p| member[v].contains(p)).collect();
        if shared.is_empty() {
            violations.push(violation("cover", format!("edge {}–{} lies in no piece", g.label(u), g.label(v))));
        } else if shared.len() > 1 {
            violations.push(violation(
                "vertex-only intersection",
                format!("edge {}–{} is shared by {} and {}", g.label(u), g.label(v), ids[shared[0]], ids[shared[1]]),
            ));
        }
    }
    for (i, id) in ids.iter().enumerate() {
        let vs = &spec.pieces[*id];
        let Some(&first) = vs.first() else { continue };
        for &j in &member[first] {
            if j != i && vs.iter().all(|v| member[*v].contains(&j)) {
                violations.push(violation("proper pieces", format!("piece {id} is contained in {}", ids[j])));
            }
        }
    }

    let mut role: BTreeMap<&str, Role> = BTreeMap::new();
    for (list, r) in [(&spec.s1, Role::S1), (&spec.s2, Role::S2)] {
        for id in list {
            if !spec.pieces.contains_key(id) {
                violations.push(violation("partition", format!("{id} is not a piece")));
            } else if role.insert(id.as_str(), r).is_some() {
                violations.push(violation("partition", format!("{id} is listed twice")));
            }
        }
    }
    for id in &ids {
        if !role.contains_key(id.as_str()) {
            violations.push(violation("partition", format!("{id} is in neither S1 nor S2")));
        }
    }
    if spec.s1.is_empty() {
        violations.push(violation("S1 non-empty", "S1 is empty"));
    }
    if spec.r <= rational::zero() {
        violations.push(violation("r positive", spec.r.to_string()));
    }

    let mut in_s1 = vec![false; n];
    for id in &spec.s1 {
        for &v in spec.pieces.get(id).into_iter().flatten() {
            in_s1[v] = true;
        }
    }

    let checked: Vec<(PieceReport, Vec<Violation>)> = ids
        .par_iter()
        .map(|id| check_piece(spec, id, role.get(id.as_str()).copied(), &in_s1))
        .collect();
    let mut pieces = Vec::with_capacity(checked.len());
    let mut strong = true;
    let mut uncovered = None;
    for (p, v) in checked {
        if p.role == Some(Role::S2) && p.w_s < p.size {
            strong = false;
            if uncovered.is_none() {
                uncovered = first_uncovered(spec, &p.id);
            }
        }
        violations.extend(v);
        pieces.push(p);
    }
    let known: Vec<String> = pieces
        .iter()
        .flat_map(|p| std::iter::once(p.id.clone()).chain(p.components.iter().map(|c| c.key.clone())))
        .collect();
    for key in spec.certificates.keys() {
        if !known.contains(key) {
            violations.push(violation("certificate keys", format!("certificate {key} matches no piece or component")));
        }
    }
    ValidationReport {
        violations,
        pieces,
        strong,
        uncovered,
        mu: g.max_degree(),
    }
}

// Ambient vertices of W_s in the piece's own metric.
fn w_set(spec: &DecompositionSpec, vs: &[Vertex], in_s1: &[bool]) -> (Graph, Vec<bool>, usize) {
    let (piece, map) = spec.ambient.induced(vs);
    let sources: Vec<Vertex> = (0..piece.len()).filter(|&i| in_s1[map[i]]).collect();
    let mut in_w = vec![false; piece.len()];
    if !sources.is_empty() {
        let d = piece.distances_from_set(&sources);
        for i in 0..piece.len() {
            in_w[i] = d[i] <= spec.big_r;
        }
    }
    (piece, in_w, sources.len())
}

fn first_uncovered(spec: &DecompositionSpec, id: &str) -> Option<Vertex> {
    let mut in_s1 = vec![false; spec.ambient.len()];
    for s in &spec.s1 {
        for &v in spec.pieces.get(s).into_iter().flatten() {
            in_s1[v] = true;
        }
    }
    let vs = &spec.pieces[id];
    let (_, in_w, _) = w_set(spec, vs, &in_s1);
    (0..vs.len()).find(|&i| !in_w[i]).map(|i| vs[i])
}

fn check_piece(spec: &DecompositionSpec, id: &str, role: Option<Role>, in_s1: &[bool]) -> (PieceReport, Vec<Violation>) {
    let g = &spec.ambient;
    let vs = &spec.pieces[id];
    let mut violations = Vec::new();
    let mut report = PieceReport {
        id: id.to_string(),
        role,
        size: vs.len(),
        certified: None,
        v_s: 0,
        w_s: 0,
        components: Vec::new(),
    };
    if vs.iter().any(|&v| v >= g.len()) {
        violations.push(violation("piece vertices", format!("{id} names an unknown vertex")));
        return (report, violations);
    }
    match role {
        Some(Role::S1) => {
            let (piece, _) = g.induced(vs);
            match certify(spec, id, &piece) {
                Ok(v) => report.certified = Some(v),
                Err(w) => violations.push(violation("S1 certificate", w)),
            }
        }
        Some(Role::S2) => {
            let (piece, in_w, v_s) = w_set(spec, vs, in_s1);
            report.v_s = v_s;
            report.w_s = in_w.iter().filter(|&&b| b).count();
            if v_s == 0 {
                violations.push(violation("V_s non-empty", format!("{id} meets no S1 piece")));
            }
            let rest: Vec<Vertex> = (0..piece.len()).filter(|&i| !in_w[i]).collect();
            let (outside, local) = piece.induced(&rest);
            let mut comps: Vec<Vec<Vertex>> = outside
                .components()
                .into_iter()
                .map(|c| {
                    let mut a: Vec<Vertex> = c.into_iter().map(|i| vs[local[i]]).collect();
                    a.sort_unstable();
                    a
                })
                .collect();
            comps.sort();
            for (j, comp) in comps.iter().enumerate() {
                let key = format!("{id}#{j}");
                let (cg, _) = g.induced(comp);
                let certified = match certify(spec, &key, &cg) {
                    Ok(v) => Some(v),
                    Err(w) => {
                        violations.push(violation(
                            "component certificate",
                            format!("{w} (component of {} vertices containing {})", comp.len(), g.label(comp[0])),
                        ));
                        None
                    }
                };
                report.components.push(ComponentReport {
                    key,
                    size: comp.len(),
                    certified,
                    crosses_frontier: comp.iter().any(|&v| g.is_frontier(v)),
                });
            }
        }
        None => {}
    }
    (report, violations)
}

fn certify(spec: &DecompositionSpec, key: &str, piece: &Graph) -> std::result::Result<Rational, String> {
    let cert = spec
        .certificates
        .get(key)
        .ok_or_else(|| format!("{key} has no certificate"))?;
    if *cert.lower() < spec.r {
        return Err(format!("{key} is certified at {} < r = {}", cert.lower(), spec.r));
    }
    cert.verify(piece).map_err(|e| format!("{key}: {e}"))?;
    Ok(cert.lower().clone())
}

/// Global lower bound from a validated decomposition with `μ` the ambient
/// maximum degree; the strong form is used when the report says strong.
pub fn decomposition_bound(spec: &DecompositionSpec, report: &ValidationReport) -> Result<CheegerBound> {
    if let Some(v) = report.violations.first() {
        return Err(Error::InvalidDecomposition(format!("{}: {}", v.clause, v.witness)));
    }
    let mu = report.mu;
    let lower = if report.strong {
        bound_strong(mu, spec.big_r, &spec.r)?
    } else {
        bound_general(mu, spec.big_r, &spec.r)?
    };
    let horizon = spec.ambient.has_frontier();
    let region = format!(
        "{} pieces validated, {} form with μ = {mu}",
        report.pieces.len(),
        if report.strong { "strong" } else { "general" }
    );
    Ok(CheegerBound::lower_only(
        lower,
        Provenance::DecompositionTheorem {
            mu,
            big_r: spec.big_r as usize,
            r: spec.r.clone(),
            strong: report.strong,
        },
        horizon,
    )
    .with_region(region))
}

/// On-disk decomposition document. Paths are relative to the document.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DecompositionFile {
    pub ambient: String,
    pub pieces: BTreeMap<String, Vec<String>>,
    #[serde(rename = "S1")]
    pub s1: Vec<String>,
    #[serde(rename = "S2")]
    pub s2: Vec<String>,
    #[serde(rename = "R")]
    pub big_r: u32,
    pub r: String,
    /// Either an inline certificate object or a path to one.
    #[serde(default)]
    pub certificates: BTreeMap<String, Value>,
}

impl DecompositionFile {
    pub fn resolve(&self, dir: &Path) -> Result<DecompositionSpec> {
        let ambient = load_graph(&dir.join(&self.ambient), Connectivity::Allow)?;
        let mut pieces = BTreeMap::new();
        for (id, labels) in &self.pieces {
            let mut vs = ambient.set_from_labels(labels)?;
            vs.sort_unstable();
            vs.dedup();
            pieces.insert(id.clone(), vs);
        }
        let mut certificates = BTreeMap::new();
        for (k, v) in &self.certificates {
            let doc = match v {
                Value::String(p) => serde_json::from_str(&std::fs::read_to_string(dir.join(p))?)?,
                other => other.clone(),
            };
            certificates.insert(k.clone(), PieceCertificate::from_json(&doc)?);
        }
        Ok(DecompositionSpec::new(
            ambient,
            pieces,
            self.s1.clone(),
            self.s2.clone(),
            self.big_r,
            rational::parse(&self.r)?,
            certificates,
        ))
    }

    /// Document for `spec` with inline certificates and the ambient graph
    /// stored at `ambient_path`.
    pub fn from_spec(spec: &DecompositionSpec, ambient_path: &str) -> Self {
        let g = &spec.ambient;
        DecompositionFile {
            ambient: ambient_path.to_string(),
            pieces: spec
                .pieces
                .iter()
                .map(|(k, vs)| (k.clone(), vs.iter().map(|&v| g.label(v).to_string()).collect()))
                .collect(),
            s1: spec.s1.clone(),
            s2: spec.s2.clone(),
            big_r: spec.big_r,
            r: spec.r.to_string(),
            certificates: spec.certificates.iter().map(|(k, c)| (k.clone(), c.to_json())).collect(),
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&serde_json::to_value(self).expect("serializable")).unwrap();
        s.push('\n');
        s
    }
}

pub fn load_decomposition(path: &Path) -> Result<DecompositionSpec> {
    let text = std::fs::read_to_string(path)?;
    let file: DecompositionFile = serde_json::from_str(&text)?;
    file.resolve(path.parent().unwrap_or(Path::new(".")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomp::graft::tree_graft_decomposition;
    use crate::graphcore::{grid_window, path_graph};
    use crate::rational::ratio;
    use crate::trees::homogeneous_tree;

    fn graft_spec() -> DecompositionSpec {
        tree_graft_decomposition(&grid_window(4, 4), &homogeneous_tree(3, 3)).unwrap().1
    }

    #[test]
    fn graft_is_strong() {
        let spec = graft_spec();
        let rep = validate(&spec);
        assert!(rep.valid(), "{:?}", rep.violations);
        assert!(rep.strong);
        assert_eq!(rep.mu, 7);
        let b = decomposition_bound(&spec, &rep).unwrap();
        assert_eq!(b.lower, bound_strong(7, 0, &ratio(1, 7)).unwrap());
        assert!(b.horizon_certified);
        assert_eq!(validate(&spec), rep);
    }

    #[test]
    fn missing_tree_leaves_an_uncertified_component() {
        let mut spec = graft_spec();
        let moved = spec.s1.remove(5);
        spec.s2.push(moved.clone());
        let rep = validate(&spec);
        assert!(!rep.valid());
        let clauses: Vec<&str> = rep.violations.iter().map(|v| v.clause).collect();
        assert!(clauses.contains(&"V_s non-empty"));
        assert!(clauses.contains(&"component certificate"));
        assert!(!rep.strong);
        assert!(rep.uncovered.is_some());
        assert!(decomposition_bound(&spec, &rep).is_err());
    }

    #[test]
    fn shared_edge_is_illegal() {
        let g = path_graph(4);
        let mut pieces = BTreeMap::new();
        pieces.insert("a".to_string(), vec![0, 1, 2]);
        pieces.insert("b".to_string(), vec![1, 2, 3]);
        let spec = DecompositionSpec::new(g, pieces, vec!["a".into()], vec!["b".into()], 0, ratio(1, 2), BTreeMap::new());
        let rep = validate(&spec);
        assert!(rep.violations.iter().any(|v| v.clause == "vertex-only intersection"));
    }

    #[test]
    fn overclaimed_tree_certificate_is_rejected() {
        let mut spec = graft_spec();
        let key = spec.s1[0].clone();
        if let Some(PieceCertificate::TreeTheorem { lower, .. }) = spec.certificates.get_mut(&key) {
            *lower = ratio(1, 2);
        }
        spec.r = ratio(1, 7);
        let rep = validate(&spec);
        assert!(rep.violations.iter().any(|v| v.clause == "S1 certificate"));
    }

    #[test]
    fn file_roundtrip() {
        let spec = graft_spec();
        let dir = tempfile::tempdir().unwrap();
        std::fs::write(dir.path().join("g.json"), crate::graphcore::GraphFile::from_graph(&spec.ambient).to_json())
            .unwrap();
        let f = DecompositionFile::from_spec(&spec, "g.json");
        std::fs::write(dir.path().join("d.json"), f.to_json()).unwrap();
        let back = load_decomposition(&dir.path().join("d.json")).unwrap();
        let a = validate(&spec);
        let b = validate(&back);
        assert_eq!(a.valid(), b.valid());
        assert_eq!(
            decomposition_bound(&spec, &a).unwrap().lower,
            decomposition_bound(&back, &b).unwrap().lower
        );
    }
}
