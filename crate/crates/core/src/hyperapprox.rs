//! Truncated hyperbolic approximations of finite metric spaces.
//!
//! Level `k` holds one vertex per point of a greedy `r^k`-separated set
//! `A_k`, standing for the ball `B(a, 2r^k)`. Same-level vertices are joined
//! when their closed balls share a point of `X`; vertices on consecutive
//! levels are joined when the upper open ball is contained in the lower one.
//! Both tests are evaluated point by point over `X`.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Map, Value};

use crate::error::{invalid, Error, Result};
use crate::graphcore::{Certificate, CheegerBound, Connectivity, Graph, GraphFile, Provenance, Vertex, VertexFunction};
use crate::hyperbolicity::{delta_graph, gromov_product_graph, DeltaMode, DeltaReport, DEFAULT_DELTA_BUDGET};
use crate::metricspace::{greedy_separated, strongly_bounded_geometry_profile, FiniteMetricSpace};
use crate::rational::{self, int, Rational};

/// Largest admissible parameter.
pub const MAX_PARAMETER: f64 = 1.0 / 6.0;
/// Default expectation for the four-point δ of the vertex metric.
pub const DEFAULT_DELTA_CAP: i64 = 3;
/// Additive slack between Gromov products at the base and `log_{1/r}(1/d)`,
/// fixed from the first verified Cantor runs.
pub const DEFAULT_VISUAL_SLACK: f64 = 1.0;

// Relative tolerance for ties between float distances and radii.
const TIE: f64 = 1e-9;

fn lt(a: f64, b: f64) -> bool {
    a < b - TIE * b.abs()
}

fn le(a: f64, b: f64) -> bool {
    a <= b + TIE * b.abs()
}

/// A truncated hyperbolic approximation with its level function.
#[derive(Clone, Debug)]
pub struct LeveledGraph {
    pub graph: Graph,
    pub level: Vec<i32>,
    pub center: Vec<usize>,
    /// Parameter `r` of the build (already raised to the stride after a relevel).
    pub r: f64,
    pub k0: i32,
    pub k_max: i32,
    /// Base parameter and stride: level `k` uses scale `base_r^(stride·k)`.
    pub base_r: f64,
    pub stride: u32,
    pub space: FiniteMetricSpace,
    by_level: Vec<Vec<Vertex>>,
}

impl LeveledGraph {
    pub fn scale(&self, k: i32) -> f64 {
        scale(self.base_r, self.stride, k)
    }

    pub fn radius(&self, v: Vertex) -> f64 {
        2.0 * self.scale(self.level[v])
    }

    /// Vertices on level `k`, in greedy order.
    pub fn level_vertices(&self, k: i32) -> &[Vertex] {
        if k < self.k0 || k > self.k_max {
            return &[];
        }
        &self.by_level[(k - self.k0) as usize]
    }

    pub fn level_sizes(&self) -> Vec<usize> {
        self.by_level.iter().map(Vec::len).collect()
    }

    pub fn base(&self) -> Vertex {
        self.by_level[0][0]
    }

    pub fn levels(&self) -> impl Iterator<Item = i32> {
        self.k0..=self.k_max
    }

    pub fn is_horizontal(&self, u: Vertex, v: Vertex) -> bool {
        self.level[u] == self.level[v]
    }

    /// Serialised graph file with level, center and parameter annotations.
    pub fn to_json(&self) -> Value {
        let gf = GraphFile::from_graph(&self.graph);
        let g = &self.graph;
        let mut levels = Map::new();
        let mut centers = Map::new();
        for v in 0..g.len() {
            levels.insert(g.label(v).to_string(), json!(self.level[v]));
            centers.insert(g.label(v).to_string(), json!(self.space.label(self.center[v])));
        }
        json!({
            "centers": centers,
            "edges": gf.edges,
            "frontier": gf.frontier,
            "k0": self.k0,
            "k_max": self.k_max,
            "levels": levels,
            "r": self.r,
            "stride": self.stride,
            "vertices": gf.vertices,
        })
    }
}

fn scale(base_r: f64, stride: u32, k: i32) -> f64 {
    base_r.powi(stride as i32 * k)
}

/// Maximal `k` with `diam < scale(k)`; a singleton has no such maximum and
/// is based at level 0.
fn base_level(diam: f64, base_r: f64, stride: u32) -> i32 {
    if diam == 0.0 {
        return 0;
    }
    let mut k = 0;
    while !lt(diam, scale(base_r, stride, k)) {
        k -= 1;
    }
    while lt(diam, scale(base_r, stride, k + 1)) {
        k += 1;
    }
    k
}

/// Base level `k₀` of the truncated approximation with parameter `r`.
pub fn base_level_for(x: &FiniteMetricSpace, r: f64) -> i32 {
    base_level(x.diameter(), r, 1)
}

fn check_parameter(r: f64) -> Result<()> {
    if !(r > 0.0 && le(r, MAX_PARAMETER)) {
        return invalid(format!("parameter r = {r} must lie in (0, 1/6]"));
    }
    Ok(())
}

/// Builds levels `k₀..=k_max` of the truncated hyperbolic approximation.
pub fn build_truncated(x: &FiniteMetricSpace, r: f64, k_max: i32) -> Result<LeveledGraph> {
    check_parameter(r)?;
    build_strided(x, r, 1, k_max)
}

fn build_strided(x: &FiniteMetricSpace, base_r: f64, stride: u32, k_max: i32) -> Result<LeveledGraph> {
    if x.is_empty() {
        return invalid("metric space is empty");
    }
    let k0 = base_level(x.diameter(), base_r, stride);
    if k_max < k0 {
        return invalid(format!("k_max = {k_max} is below the base level {k0}"));
    }
    let mut labels = Vec::new();
    let mut level = Vec::new();
    let mut center = Vec::new();
    let mut by_level = Vec::new();
    for k in k0..=k_max {
        let a = greedy_separated(x, scale(base_r, stride, k));
        let mut ids = Vec::with_capacity(a.len());
        for p in a {
            ids.push(labels.len());
            labels.push(format!("L{k}:{}", x.label(p)));
            level.push(k);
            center.push(p);
        }
        by_level.push(ids);
    }
    let mut edges = Vec::new();
    for (i, k) in (k0..=k_max).enumerate() {
        let rad = 2.0 * scale(base_r, stride, k);
        let here = &by_level[i];
        let pairs: Vec<(Vertex, Vertex)> = (0..here.len())
            .flat_map(|a| (a + 1..here.len()).map(move |b| (a, b)))
            .map(|(a, b)| (here[a], here[b]))
            .collect();
        let horiz: Vec<(Vertex, Vertex)> = pairs
            .into_par_iter()
            .filter(|&(u, v)| {
                let (cu, cv) = (center[u], center[v]);
                le(x.dist(cu, cv), 2.0 * rad)
                    && (0..x.len()).any(|p| le(x.dist(p, cu), rad) && le(x.dist(p, cv), rad))
            })
            .collect();
        edges.extend(horiz);
        if k < k_max {
            let up = &by_level[i + 1];
            let up_rad = 2.0 * scale(base_r, stride, k + 1);
            let pairs: Vec<(Vertex, Vertex)> = here.iter().flat_map(|&l| up.iter().map(move |&u| (l, u))).collect();
            let radial: Vec<(Vertex, Vertex)> = pairs
                .into_par_iter()
                .filter(|&(l, u)| {
                    let (cl, cu) = (center[l], center[u]);
                    lt(x.dist(cl, cu), rad)
                        && (0..x.len()).all(|p| !lt(x.dist(p, cu), up_rad) || lt(x.dist(p, cl), rad))
                })
                .collect();
            edges.extend(radial);
        }
    }
    let frontier = by_level.last().unwrap().clone();
    let graph = Graph::build(labels, &edges, &frontier, Connectivity::Allow)?;
    let out = LeveledGraph {
        graph,
        level,
        center,
        r: base_r.powi(stride as i32),
        k0,
        k_max,
        base_r,
        stride,
        space: x.clone(),
        by_level,
    };
    if let Some(w) = invariant_violation(&out) {
        return Err(Error::Falsified(format!("hyperbolic approximation construction: {w}")));
    }
    Ok(out)
}

/// First violated invariant, described with a witness.
fn invariant_violation(l: &LeveledGraph) -> Option<String> {
    let g = &l.graph;
    if l.by_level[0].len() != 1 {
        return Some(format!("base level {} has {} vertices", l.k0, l.by_level[0].len()));
    }
    for (u, v) in g.edges() {
        if (l.level[u] - l.level[v]).abs() > 1 {
            return Some(format!("edge {} – {} skips a level", g.label(u), g.label(v)));
        }
    }
    for v in 0..g.len() {
        if l.level[v] < l.k_max && !g.neighbors(v).iter().any(|&w| l.level[w] == l.level[v] + 1) {
            return Some(format!("vertex {} has no upper neighbour", g.label(v)));
        }
        if g.is_frontier(v) != (l.level[v] == l.k_max) {
            return Some(format!("vertex {} has the wrong frontier flag", g.label(v)));
        }
    }
    if !g.is_connected() {
        return Some("graph is disconnected".into());
    }
    None
}

/// Rebuilds with parameter `r^s`, using `A'_k = A_{s·k}` and top level
/// `⌊k_max / s⌋`.
pub fn relevel(l: &LeveledGraph, s: u32) -> Result<LeveledGraph> {
    if s == 0 {
        return invalid("relevel stride must be at least 1");
    }
    let stride = l.stride * s;
    let k_max = l.k_max.div_euclid(s as i32);
    build_strided(&l.space, l.base_r, stride, k_max)
}

/// Degree cap `M₁ + M₂ + M₃` from ball counts of the separated sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeCap {
    /// `1 + max |A_n ∩ B(x, 5rⁿ)|`.
    pub m1: usize,
    /// `1 + max |A_{n+1} ∩ B(x, 2rⁿ)|`.
    pub m2: usize,
    /// `1 + max |A_{n−1} ∩ B(x, 2r^{n−1})|`.
    pub m3: usize,
}

impl DegreeCap {
    pub fn total(&self) -> usize {
        self.m1 + self.m2 + self.m3
    }
}

// 1 + largest ball count over the given levels. Scales above the diameter
// have a one-point separated set.
fn profile_m(l: &LeveledGraph, k_factor: f64, levels: impl Iterator<Item = i32>) -> Result<usize> {
    let diam = l.space.diameter();
    let scales: Vec<f64> = levels.map(|k| l.scale(k)).filter(|&e| e <= diam).collect();
    if scales.is_empty() {
        return Ok(2);
    }
    Ok(strongly_bounded_geometry_profile(&l.space, k_factor, &scales)?.m.max(2))
}

pub fn degree_cap(l: &LeveledGraph) -> Result<DegreeCap> {
    let m1 = profile_m(l, 5.0, l.levels())?;
    let m2 = profile_m(l, 2.0 / l.r, l.k0 + 1..=l.k_max)?;
    let m3 = profile_m(l, 2.0, l.k0..l.k_max)?;
    Ok(DegreeCap { m1, m2, m3 })
}

/// Outcome of [`structural_checks`].
#[derive(Clone, Debug)]
pub struct StructuralReport {
    pub delta: Option<DeltaReport<Rational>>,
    pub delta_cap: i64,
    pub edges_classified: bool,
    pub horizontal_edges: usize,
    pub radial_edges: usize,
    pub max_degree: usize,
    pub degree_cap: DegreeCap,
    pub unique_base: bool,
    pub upper_neighbors: bool,
    /// `d(base, v) = level(v) − k₀` for every `v`, so downward radial chains
    /// are geodesics.
    pub radial_geodesics: bool,
    /// Structural failures with witnesses; δ above the cap is a finding only.
    pub failures: Vec<String>,
}

impl StructuralReport {
    pub fn delta_within_cap(&self) -> Option<bool> {
        self.delta.as_ref().map(|d| d.delta <= int(self.delta_cap))
    }

    pub fn degree_ok(&self) -> bool {
        self.max_degree < self.degree_cap.total()
    }

    /// Every structural check passed and δ (when computed) is within the cap.
    pub fn passes(&self) -> bool {
        self.failures.is_empty() && self.delta_within_cap() != Some(false)
    }

    pub fn to_json(&self, l: &LeveledGraph) -> Value {
        let lab = |i: usize| l.graph.label(i).to_string();
        json!({
            "delta": self.delta.as_ref().map(|d| d.to_json(lab)),
            "delta_cap": self.delta_cap,
            "delta_within_cap": self.delta_within_cap(),
            "degree_cap": {"m1": self.degree_cap.m1, "m2": self.degree_cap.m2, "m3": self.degree_cap.m3,
                "total": self.degree_cap.total()},
            "degree_ok": self.degree_ok(),
            "edges_classified": self.edges_classified,
            "failures": self.failures,
            "horizontal_edges": self.horizontal_edges,
            "level_sizes": l.level_sizes(),
            "max_degree": self.max_degree,
            "passes": self.passes(),
            "radial_edges": self.radial_edges,
            "radial_geodesics": self.radial_geodesics,
            "unique_base": self.unique_base,
            "upper_neighbors": self.upper_neighbors,
        })
    }
}

/// Runs all structural checks. δ is skipped (reported as `None`) when the
/// exhaustive scan exceeds `delta_budget`.
pub fn structural_checks(l: &LeveledGraph, delta_cap: i64, delta_budget: u128) -> Result<StructuralReport> {
    let g = &l.graph;
    let mut failures = Vec::new();
    let (mut horizontal, mut radial, mut classified) = (0, 0, true);
    for (u, v) in g.edges() {
        match (l.level[u] - l.level[v]).abs() {
            0 => horizontal += 1,
            1 => radial += 1,
            _ => {
                classified = false;
                failures.push(format!("edge {} – {} is neither horizontal nor radial", g.label(u), g.label(v)));
            }
        }
    }
    let minima: Vec<Vertex> = (0..g.len()).filter(|&v| l.level[v] == l.k0).collect();
    let unique_base = minima.len() == 1;
    if !unique_base {
        failures.push(format!("{} vertices on the base level", minima.len()));
    }
    let mut upper = true;
    for v in 0..g.len() {
        if l.level[v] < l.k_max && !g.neighbors(v).iter().any(|&w| l.level[w] == l.level[v] + 1) {
            upper = false;
            failures.push(format!("vertex {} has no upper neighbour", g.label(v)));
        }
    }
    let db = g.distances_from(l.base());
    let mut geodesic = true;
    for v in 0..g.len() {
        if db[v] as i64 != (l.level[v] - l.k0) as i64 {
            geodesic = false;
            failures.push(format!("vertex {} is not at distance level − k₀ from the base", g.label(v)));
            break;
        }
    }
    let cap = degree_cap(l)?;
    let max_degree = g.max_degree();
    if max_degree >= cap.total() {
        let v = (0..g.len()).find(|&v| g.degree(v) == max_degree).unwrap();
        failures.push(format!("vertex {} has degree {max_degree} ≥ cap {}", g.label(v), cap.total()));
    }
    let delta = match delta_graph(g, DeltaMode::Exhaustive, delta_budget) {
        Ok(d) => Some(d),
        Err(Error::BudgetExceeded { .. }) => None,
        Err(e) => return Err(e),
    };
    Ok(StructuralReport {
        delta,
        delta_cap,
        edges_classified: classified,
        horizontal_edges: horizontal,
        radial_edges: radial,
        max_degree,
        degree_cap: cap,
        unique_base,
        upper_neighbors: upper,
        radial_geodesics: geodesic,
        failures,
    })
}

/// [`structural_checks`] with the default cap and budget.
pub fn structural_checks_default(l: &LeveledGraph) -> Result<StructuralReport> {
    structural_checks(l, DEFAULT_DELTA_CAP, DEFAULT_DELTA_BUDGET)
}

pub fn level_function(l: &LeveledGraph) -> VertexFunction {
    VertexFunction::from_fn(&l.graph, |v| int(l.level[v] as i64))
}

/// `Δf` of the level function at `v`: `(up − down) / deg`.
pub fn level_laplacian(l: &LeveledGraph, v: Vertex) -> Rational {
    let g = &l.graph;
    let s: i64 = g.neighbors(v).iter().map(|&w| (l.level[w] - l.level[v]) as i64).sum();
    rational::ratio(s, g.degree(v) as i64)
}

/// Level-function certificate: `c₂ = min Δf` over levels `k₀+1..k_max−1`
/// and `c₁ = 1`, giving `h ≥ c₂/μ` when `c₂ > 0`.
pub fn level_certificate(l: &LeveledGraph) -> Result<Certificate> {
    if l.k_max - l.k0 < 2 {
        return invalid(format!("level certificate needs at least 3 levels, got {}", l.k_max - l.k0 + 1));
    }
    let mut best: Option<(Rational, Vertex)> = None;
    for k in l.k0 + 1..l.k_max {
        for &v in l.level_vertices(k) {
            let d = level_laplacian(l, v);
            if best.as_ref().is_none_or(|(b, _)| d < *b) {
                best = Some((d, v));
            }
        }
    }
    let (c2, vertex) = best.unwrap();
    let c1 = rational::one();
    if c2 <= rational::zero() {
        return Ok(Certificate::NoCertificate { vertex, laplacian: c2, c1 });
    }
    let mu = l.graph.max_degree();
    let lower = c2.clone() / int(mu as i64);
    let region = format!(
        "level laplacian checked on levels {}..={}; top level {} is the frontier",
        l.k0 + 1,
        l.k_max - 1,
        l.k_max
    );
    Ok(Certificate::Certified(
        CheegerBound::lower_only(
            lower,
            Provenance::LevelCertificate {
                c1,
                c2,
                mu,
                k0: l.k0,
                k_max: l.k_max,
            },
            true,
        )
        .with_region(region),
    ))
}

/// Recomputes a level certificate from the graph.
pub fn verify_level_certificate(l: &LeveledGraph, b: &CheegerBound) -> Result<()> {
    let Provenance::LevelCertificate { c1, c2, mu, k0, k_max } = &b.lower_witness else {
        return Err(Error::Falsified("not a level certificate".into()));
    };
    if (*k0, *k_max) != (l.k0, l.k_max) || *mu != l.graph.max_degree() {
        return Err(Error::Falsified("level certificate parameters do not match the graph".into()));
    }
    for (u, v) in l.graph.edges() {
        if int((l.level[u] - l.level[v]).abs() as i64) > *c1 {
            return Err(Error::Falsified("level gradient exceeds c1".into()));
        }
    }
    match level_certificate(l)? {
        Certificate::Certified(again) if again.lower == b.lower => {
            let Provenance::LevelCertificate { c2: c2b, .. } = &again.lower_witness else { unreachable!() };
            if c2b != c2 {
                return Err(Error::Falsified("level certificate c2 does not recompute".into()));
            }
            Ok(())
        }
        _ => Err(Error::Falsified("level certificate does not recompute".into())),
    }
}

/// Smallest stride `s ≤ s_max` whose relevel carries a level certificate.
pub fn find_certifying_stride(l: &LeveledGraph, s_max: u32) -> Result<Option<(u32, LeveledGraph, CheegerBound)>> {
    for s in 1..=s_max {
        let m = match relevel(l, s) {
            Ok(m) => m,
            Err(Error::InvalidInput(_)) => break,
            Err(e) => return Err(e),
        };
        if m.k_max - m.k0 < 2 {
            break;
        }
        if let Certificate::Certified(b) = level_certificate(&m)? {
            return Ok(Some((s, m, b)));
        }
    }
    Ok(None)
}

/// One pair in [`BoundaryReport`].
#[derive(Clone, Debug, PartialEq)]
pub struct BoundaryPair {
    pub u: Vertex,
    pub w: Vertex,
    pub product: Rational,
    /// `log_{1/r}(1/d(x, y))`.
    pub log_term: f64,
    pub deviation: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct BoundaryReport {
    pub pairs: Vec<BoundaryPair>,
    pub max_deviation: f64,
    pub slack: f64,
}

impl BoundaryReport {
    pub fn within_slack(&self) -> bool {
        self.max_deviation <= self.slack
    }

    pub fn to_json(&self, l: &LeveledGraph) -> Value {
        let g = &l.graph;
        json!({
            "max_deviation": self.max_deviation,
            "pairs": self.pairs.iter().map(|p| json!({
                "deviation": p.deviation,
                "log_term": p.log_term,
                "product": p.product.to_string(),
                "u": g.label(p.u),
                "w": g.label(p.w),
            })).collect::<Vec<_>>(),
            "slack": self.slack,
            "within_slack": self.within_slack(),
        })
    }
}

/// Compares Gromov products of deepest-level vertices at the base with the
/// visual exponent `log_{1/r}(1/d(x, y))` of their centers.
pub fn boundary_identification_check(
    l: &LeveledGraph,
    pairs: &[(Vertex, Vertex)],
    slack: f64,
) -> Result<BoundaryReport> {
    let g = &l.graph;
    let base = l.base();
    let mut out = Vec::with_capacity(pairs.len());
    let mut worst = 0.0f64;
    for &(u, w) in pairs {
        if u >= g.len() || w >= g.len() || l.level[u] != l.k_max || l.level[w] != l.k_max {
            return invalid("boundary pairs must be deepest-level vertices");
        }
        let d = l.space.dist(l.center[u], l.center[w]);
        if d == 0.0 {
            return invalid(format!("vertices {} and {} share a center", g.label(u), g.label(w)));
        }
        let product = gromov_product_graph(g, u, w, base)?;
        let log_term = (1.0 / d).ln() / (1.0 / l.r).ln();
        let deviation = (rational::to_f64(&product) - log_term).abs();
        worst = worst.max(deviation);
        out.push(BoundaryPair {
            u,
            w,
            product,
            log_term,
            deviation,
        });
    }
    Ok(BoundaryReport {
        pairs: out,
        max_deviation: worst,
        slack,
    })
}

/// `count` seeded random pairs of distinct deepest-level vertices.
pub fn random_deepest_pairs(l: &LeveledGraph, count: usize, seed: u64) -> Vec<(Vertex, Vertex)> {
    let top = l.level_vertices(l.k_max);
    if top.len() < 2 {
        return Vec::new();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let two: Vec<&Vertex> = top.choose_multiple(&mut rng, 2).collect();
            (*two[0], *two[1])
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metricspace::{cantor_sample, two_point, FiniteMetricSpace};

    fn singleton() -> FiniteMetricSpace {
        FiniteMetricSpace::new(vec!["o".into()], vec![vec![0.0]]).unwrap()
    }

    #[test]
    fn two_point_hand_run() {
        let l = build_truncated(&two_point(1.0), 1.0 / 6.0, 0).unwrap();
        assert_eq!(l.k0, -1);
        assert_eq!(l.level_sizes(), vec![1, 2]);
        let g = &l.graph;
        assert_eq!(g.edge_count(), 3);
        let (p, q) = (g.vertex("L0:p").unwrap(), g.vertex("L0:q").unwrap());
        assert!(g.has_edge(p, q));
        assert!(g.has_edge(l.base(), p) && g.has_edge(l.base(), q));
    }

    #[test]
    fn two_point_deep_levels_split_into_chains() {
        let l = build_truncated(&two_point(1.0), 1.0 / 6.0, 4).unwrap();
        for k in 1..=4 {
            for &v in l.level_vertices(k) {
                assert!(l.graph.neighbors(v).iter().all(|&w| l.level[w] != k));
            }
        }
        let c = level_certificate(&l).unwrap();
        assert!(c.bound().is_none());
        let rep = structural_checks_default(&l).unwrap();
        assert!(rep.passes(), "{:?}", rep.failures);
        assert_eq!(rep.delta.unwrap().delta, rational::ratio(1, 2));
    }

    #[test]
    fn singleton_is_a_path() {
        let l = build_truncated(&singleton(), 1.0 / 6.0, 5).unwrap();
        assert_eq!(l.k0, 0);
        assert_eq!(l.graph.len(), 6);
        assert_eq!(l.graph.edge_count(), 5);
        assert_eq!(l.graph.max_degree(), 2);
        let rep = structural_checks_default(&l).unwrap();
        assert_eq!(rep.delta.as_ref().unwrap().delta, rational::zero());
        assert!(rep.passes());
        match level_certificate(&l).unwrap() {
            Certificate::NoCertificate { laplacian, .. } => assert_eq!(laplacian, rational::zero()),
            _ => panic!("a ray has no certificate"),
        }
        let m = relevel(&l, 2).unwrap();
        assert_eq!(m.graph.len(), 3);
        assert_eq!(m.graph.edge_count(), 2);
    }

    #[test]
    fn rejects_large_parameter() {
        assert!(build_truncated(&two_point(1.0), 0.2, 2).is_err());
        assert!(build_truncated(&two_point(1.0), 1.0 / 6.0, -2).is_err());
    }

    #[test]
    fn cantor_counts_are_monotone_and_stable() {
        let x = cantor_sample(6);
        let a = build_truncated(&x, 1.0 / 9.0, 3).unwrap();
        let b = build_truncated(&x, 1.0 / 9.0, 3).unwrap();
        assert_eq!(a.to_json(), b.to_json());
        let sizes = a.level_sizes();
        assert!(sizes.windows(2).all(|w| w[0] <= w[1]), "{sizes:?}");
        assert_eq!(a.k0, 0);
        assert_eq!(*sizes.last().unwrap(), 64);
    }

    #[test]
    fn relevel_stride_one_is_identity() {
        let l = build_truncated(&cantor_sample(4), 1.0 / 9.0, 2).unwrap();
        let m = relevel(&l, 1).unwrap();
        assert_eq!(l.to_json(), m.to_json());
    }

    #[test]
    fn cantor_level_certificate_is_positive() {
        let l = build_truncated(&cantor_sample(6), 1.0 / 9.0, 3).unwrap();
        let (_, m, b) = find_certifying_stride(&l, 3).unwrap().expect("some stride certifies");
        assert!(b.lower > rational::zero());
        verify_level_certificate(&m, &b).unwrap();
    }

    #[test]
    fn sibling_product_matches_visual_exponent() {
        let l = build_truncated(&cantor_sample(6), 1.0 / 9.0, 3).unwrap();
        let top = l.level_vertices(3);
        let left = top.iter().copied().find(|&v| l.space.label(l.center[v]) == "0/729").unwrap();
        let right = top.iter().copied().find(|&v| l.space.label(l.center[v]) == "486/729").unwrap();
        let rep = boundary_identification_check(&l, &[(left, right)], DEFAULT_VISUAL_SLACK).unwrap();
        assert!((rep.pairs[0].log_term - (1.5f64).ln() / 9f64.ln()).abs() < 1e-12);
        assert!(rep.within_slack());
    }
}
