use serde_json::{json, Value};

use super::bound::{CheegerBound, Provenance};
use super::window::{boundary, cheeger_ratio};
use super::graph::{Graph, Vertex};
use crate::error::{invalid, Error, Result};
use crate::rational::{self, int, Rational};

/// Rational function on the vertices of a graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexFunction(Vec<Rational>);

impl VertexFunction {
    pub fn new(values: Vec<Rational>) -> Self {
        VertexFunction(values)
    }

    pub fn from_fn(g: &Graph, f: impl Fn(Vertex) -> Rational) -> Self {
        VertexFunction((0..g.len()).map(f).collect())
    }

    pub fn from_ints(values: &[i64]) -> Self {
        VertexFunction(values.iter().map(|&x| int(x)).collect())
    }

    pub fn constant(g: &Graph, c: Rational) -> Self {
        VertexFunction(vec![c; g.len()])
    }

    /// Indicator function of a vertex set.
    pub fn indicator(g: &Graph, a: &[Vertex]) -> Self {
        let mut v = vec![rational::zero(); g.len()];
        for &x in a {
            v[x] = rational::one();
        }
        VertexFunction(v)
    }

    /// BFS distance from `root`.
    pub fn distance_from(g: &Graph, root: Vertex) -> Self {
        let d = g.distances_from(root);
        VertexFunction(d.into_iter().map(|x| int(x as i64)).collect())
    }

    /// Parses a `{label: "rational"}` map covering every vertex.
    pub fn from_json(g: &Graph, v: &Value) -> Result<Self> {
        let obj = v.as_object().ok_or_else(|| Error::InvalidInput("function must be an object".into()))?;
        let mut vals: Vec<Option<Rational>> = vec![None; g.len()];
        for (k, x) in obj {
            let idx = g.vertex_or_err(k)?;
            let r = match x {
                Value::String(s) => rational::parse(s)?,
                Value::Number(n) if n.is_i64() => int(n.as_i64().unwrap()),
                _ => return invalid(format!("value for {k:?} must be an integer or a rational string")),
            };
            vals[idx] = Some(r);
        }
        let mut out = Vec::with_capacity(g.len());
        for (i, v) in vals.into_iter().enumerate() {
            out.push(v.ok_or_else(|| Error::InvalidInput(format!("function undefined at {:?}", g.label(i))))?);
        }
        Ok(VertexFunction(out))
    }

    pub fn to_json(&self, g: &Graph) -> Value {
        let m: serde_json::Map<String, Value> = self
            .0
            .iter()
            .enumerate()
            .map(|(i, x)| (g.label(i).to_string(), Value::from(x.to_string())))
            .collect();
        Value::Object(m)
    }

    pub fn values(&self) -> &[Rational] {
        &self.0
    }

    pub fn get(&self, v: Vertex) -> &Rational {
        &self.0[v]
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    fn check(&self, g: &Graph) -> Result<()> {
        if self.0.len() != g.len() {
            return invalid(format!("function has {} values for {} vertices", self.0.len(), g.len()));
        }
        Ok(())
    }

    pub fn support(&self) -> Vec<Vertex> {
        (0..self.0.len()).filter(|&v| self.0[v] != rational::zero()).collect()
    }
}

fn check_vertex(g: &Graph, v: Vertex) -> Result<()> {
    if v >= g.len() {
        return invalid(format!("vertex {v} is not in the graph"));
    }
    Ok(())
}

/// `∇ₓᵧf = f(y) − f(x)` on edges, `0` otherwise.
pub fn gradient(g: &Graph, f: &VertexFunction, x: Vertex, y: Vertex) -> Result<Rational> {
    f.check(g)?;
    check_vertex(g, x)?;
    check_vertex(g, y)?;
    Ok(if g.has_edge(x, y) {
        f.get(y) - f.get(x)
    } else {
        rational::zero()
    })
}

/// `(Δf)(x) = |N(x)|⁻¹ Σ_{y∈N(x)} (f(y) − f(x))`.
pub fn laplacian(g: &Graph, f: &VertexFunction, x: Vertex) -> Result<Rational> {
    f.check(g)?;
    check_vertex(g, x)?;
    let deg = g.degree(x);
    if deg == 0 {
        return invalid(format!("laplacian undefined at isolated vertex {:?}", g.label(x)));
    }
    let s: Rational = g.neighbors(x).iter().map(|&y| f.get(y) - f.get(x)).sum();
    Ok(s / int(deg as i64))
}

/// Residual of the discrete Green formula,
/// `Σ_x (Δf)(x) g₂(x) |N(x)| + ½ Σ_{x,y} ∇ₓᵧf ∇ₓᵧg₂` over ordered pairs.
/// The two sums are evaluated independently; the result is exactly zero.
pub fn green_identity_check(g: &Graph, f: &VertexFunction, g2: &VertexFunction) -> Result<Rational> {
    f.check(g)?;
    g2.check(g)?;
    if g.has_frontier() {
        let near = frontier_adjacent(g);
        let touches = |h: &VertexFunction| h.support().iter().any(|&v| near[v]);
        if touches(f) && touches(g2) {
            return Err(Error::InvalidSupport(
                "both functions are non-zero next to the frontier".into(),
            ));
        }
    }
    let mut first = rational::zero();
    for x in 0..g.len() {
        if g.degree(x) == 0 {
            continue;
        }
        first += laplacian(g, f, x)? * g2.get(x) * int(g.degree(x) as i64);
    }
    let mut second = rational::zero();
    for x in 0..g.len() {
        for y in 0..g.len() {
            if g.has_edge(x, y) {
                second += gradient(g, f, x, y)? * gradient(g, g2, x, y)?;
            }
        }
    }
    Ok(first + second / int(2))
}

/// Frontier vertices and their neighbours.
pub fn frontier_adjacent(g: &Graph) -> Vec<bool> {
    let mut near = vec![false; g.len()];
    for v in g.frontier() {
        near[v] = true;
        for &w in g.neighbors(v) {
            near[w] = true;
        }
    }
    near
}

/// Interior of a window: vertices off the frontier and not adjacent to it.
pub fn interior(g: &Graph) -> Vec<Vertex> {
    let near = frontier_adjacent(g);
    (0..g.len()).filter(|&v| !near[v]).collect()
}

/// Constants of a function certificate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertificateConstants {
    /// `max |∇f|` over all edges.
    pub c1: Rational,
    /// `min Δf` over interior vertices.
    pub c2: Rational,
    /// First interior vertex attaining `c2`.
    pub argmin: Vertex,
}

pub fn certificate_constants(g: &Graph, f: &VertexFunction) -> Result<CertificateConstants> {
    f.check(g)?;
    let inner = interior(g);
    if inner.is_empty() {
        return Err(Error::EmptyWindow("no vertex is off the frontier and its neighbours".into()));
    }
    let mut c1 = rational::zero();
    for (u, v) in g.edges() {
        let d = rational::abs(&(f.get(v) - f.get(u)));
        if d > c1 {
            c1 = d;
        }
    }
    let mut best: Option<(Rational, Vertex)> = None;
    for &x in &inner {
        let l = laplacian(g, f, x)?;
        if best.as_ref().is_none_or(|(b, _)| l < *b) {
            best = Some((l, x));
        }
    }
    let (c2, argmin) = best.unwrap();
    Ok(CertificateConstants { c1, c2, argmin })
}

/// Outcome of [`certificate_lower_bound`].
#[derive(Clone, Debug, PartialEq)]
pub enum Certificate {
    Certified(CheegerBound),
    /// `Δf ≤ 0` at `vertex`, so `f` certifies nothing.
    NoCertificate { vertex: Vertex, laplacian: Rational, c1: Rational },
}

impl Certificate {
    pub fn bound(&self) -> Option<&CheegerBound> {
        match self {
            Certificate::Certified(b) => Some(b),
            Certificate::NoCertificate { .. } => None,
        }
    }

    pub fn to_json(&self, g: &Graph) -> Value {
        match self {
            Certificate::Certified(b) => json!({"certified": true, "bound": b.to_json(Some(g))}),
            Certificate::NoCertificate { vertex, laplacian, c1 } => json!({
                "certified": false,
                "violating_vertex": g.label(*vertex),
                "laplacian": laplacian.to_string(),
                "c1": c1.to_string(),
            }),
        }
    }
}

/// Function certificate `h ≥ c₂ / (μ c₁)` when `c₂ > 0`.
pub fn certificate_lower_bound(g: &Graph, f: &VertexFunction) -> Result<Certificate> {
    if !g.is_connected() {
        return invalid("certificate needs a connected graph");
    }
    let k = certificate_constants(g, f)?;
    if k.c2 <= rational::zero() {
        return Ok(Certificate::NoCertificate {
            vertex: k.argmin,
            laplacian: k.c2,
            c1: k.c1,
        });
    }
    assert!(k.c1 > rational::zero(), "positive laplacian forces a non-constant neighbour");
    let mu = g.max_degree();
    let lower = k.c2.clone() / (k.c1.clone() * int(mu as i64));
    let horizon = g.has_frontier();
    let region = if horizon {
        format!(
            "laplacian checked on {} interior vertices; bound holds for the ambient graph",
            interior(g).len()
        )
    } else {
        "laplacian checked on every vertex".to_string()
    };
    let bound = CheegerBound::lower_only(
        lower,
        Provenance::Certificate {
            f: f.clone(),
            c1: k.c1,
            c2: k.c2,
            mu,
        },
        horizon,
    )
    .with_region(region);
    Ok(Certificate::Certified(bound))
}

/// Outcome of [`corollary_connected_bound`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorollaryCheck {
    pub ratio: Rational,
    pub c1: Rational,
    pub c2: Rational,
    /// `c₂/c₁` when `c₂ > 0`.
    pub bound: Option<Rational>,
    pub holds: bool,
}

/// Checks `|∂A|/|A| ≥ c₂/c₁` for a set whose boundary vertices each see
/// exactly one vertex of `A`. `c₁` is taken over edges inside `A ∪ ∂A` and
/// `c₂` over `A`.
pub fn corollary_connected_bound(g: &Graph, f: &VertexFunction, a: &[Vertex]) -> Result<CorollaryCheck> {
    f.check(g)?;
    let a = g.check_set(a)?;
    let bd = boundary(g, &a)?;
    let mut in_a = vec![false; g.len()];
    for &v in &a {
        in_a[v] = true;
    }
    for &x in &bd {
        let c = g.neighbors(x).iter().filter(|&&y| in_a[y]).count();
        if c != 1 {
            return Err(Error::Precondition {
                vertex: g.label(x).to_string(),
                reason: format!("boundary vertex has {c} neighbours in the set"),
            });
        }
    }
    let mut closed = vec![false; g.len()];
    for &v in a.iter().chain(bd.iter()) {
        closed[v] = true;
    }
    let mut c1 = rational::zero();
    for (u, v) in g.edges() {
        if closed[u] && closed[v] {
            let d = rational::abs(&(f.get(v) - f.get(u)));
            if d > c1 {
                c1 = d;
            }
        }
    }
    let mut c2: Option<Rational> = None;
    for &x in &a {
        let l = laplacian(g, f, x)?;
        if c2.as_ref().is_none_or(|c| l < *c) {
            c2 = Some(l);
        }
    }
    let c2 = c2.unwrap();
    let ratio = cheeger_ratio(g, &a)?;
    let bound = (c2 > rational::zero() && c1 > rational::zero()).then(|| c2.clone() / c1.clone());
    let holds = bound.as_ref().is_none_or(|b| ratio >= *b);
    Ok(CorollaryCheck { ratio, c1, c2, bound, holds })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphcore::graph::path_graph;
    use crate::rational::ratio;

    #[test]
    fn gradient_and_laplacian_on_path() {
        let g = path_graph(5);
        let f = VertexFunction::from_ints(&[1, 2, 3, 4, 5]);
        assert_eq!(gradient(&g, &f, 1, 2).unwrap(), int(1));
        assert_eq!(gradient(&g, &f, 2, 1).unwrap(), int(-1));
        assert_eq!(gradient(&g, &f, 0, 2).unwrap(), int(0));
        assert!(gradient(&g, &f, 0, 7).is_err());
        assert_eq!(laplacian(&g, &f, 2).unwrap(), int(0));
        assert_eq!(laplacian(&g, &f, 0).unwrap(), int(1));
    }

    #[test]
    fn green_on_indicator() {
        let g = path_graph(5);
        let f = VertexFunction::indicator(&g, &[2]);
        assert_eq!(green_identity_check(&g, &f, &f).unwrap(), int(0));
        let c = VertexFunction::constant(&g, ratio(3, 2));
        let h = VertexFunction::from_ints(&[4, -1, 0, 2, 7]);
        assert_eq!(green_identity_check(&g, &c, &h).unwrap(), int(0));
    }

    #[test]
    fn green_rejects_frontier_support() {
        let g = path_graph(5).with_frontier(&[0]).unwrap();
        let f = VertexFunction::indicator(&g, &[1]);
        assert!(matches!(green_identity_check(&g, &f, &f), Err(Error::InvalidSupport(_))));
        let inner = VertexFunction::indicator(&g, &[3]);
        assert_eq!(green_identity_check(&g, &f, &inner).unwrap(), int(0));
    }

    #[test]
    fn line_has_no_certificate() {
        let g = path_graph(9).with_frontier(&[0, 8]).unwrap();
        let f = VertexFunction::from_ints(&[0, 1, 2, 3, 4, 5, 6, 7, 8]);
        match certificate_lower_bound(&g, &f).unwrap() {
            Certificate::NoCertificate { vertex, laplacian, .. } => {
                assert_eq!(vertex, 2);
                assert_eq!(laplacian, int(0));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn corollary_precondition() {
        // a–c–b with A = {a, b}: c sees two vertices of A
        let g = path_graph(3);
        let f = VertexFunction::from_ints(&[0, 1, 2]);
        match corollary_connected_bound(&g, &f, &[0, 2]) {
            Err(Error::Precondition { vertex, .. }) => assert_eq!(vertex, "2"),
            other => panic!("unexpected {other:?}"),
        }
    }
}
