//! Subcommand arguments and their implementations.

use std::path::{Path, PathBuf};

use clap::{Args, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use super::inputs::{as_graph, as_metric, as_tree, load, Input, Loaded};
use super::{CommandOutput, Context};
use crate::decomp::{
    bound_general, bound_strong, converse_scan, decomposition_bound, graft_layout, load_decomposition,
    tree_graft_decomposition, validate, DecompositionFile, ScanConfig,
};
use crate::error::{invalid, Error, Result};
use crate::graphcore::{
    admissible_vertices, certificate_lower_bound, green_identity_check, interior_cheeger, Graph, GraphFile,
    VertexFunction, WindowMethod, WindowSearch, DEFAULT_BUDGET,
};
use crate::hyperapprox::{
    boundary_identification_check, build_truncated, find_certifying_stride, level_certificate, random_deepest_pairs,
    relevel, structural_checks, DEFAULT_DELTA_CAP, DEFAULT_VISUAL_SLACK,
};
use crate::hyperbolicity::{delta_graph, delta_metric, DeltaMode, DEFAULT_DELTA_BUDGET};
use crate::metricspace::{epsilon_net, two_point_perfectness_check, uniformly_perfect_check};
use crate::rational::{self, Rational};
use crate::trees::{analyze, end_space, lemma_suite, pseudo_regularity_index};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum MethodArg {
    Auto,
    Enumerate,
    TreeDp,
    Connected,
}

impl From<MethodArg> for WindowMethod {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Auto => WindowMethod::Auto,
            MethodArg::Enumerate => WindowMethod::Enumerate,
            MethodArg::TreeDp => WindowMethod::TreeDp,
            MethodArg::Connected => WindowMethod::Connected,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FormArg {
    OnePoint,
    TwoPoint,
}

#[derive(Args, Debug, Serialize)]
pub struct CheegerArgs {
    /// Graph or tree file, or a generator.
    #[arg(long = "in")]
    pub input: String,
    /// Largest set size (default: every admissible vertex).
    #[arg(long)]
    pub max_size: Option<usize>,
    #[arg(long, value_enum, default_value_t = MethodArg::Auto)]
    pub method: MethodArg,
}

#[derive(Args, Debug, Serialize)]
pub struct CertifyArgs {
    #[arg(long = "in")]
    pub input: String,
    /// JSON object mapping vertex labels to values.
    #[arg(long, conflicts_with = "distance_from")]
    pub function: Option<PathBuf>,
    /// Use f = distance from this vertex (default for trees: the root).
    #[arg(long)]
    pub distance_from: Option<String>,
    /// Second function for the Green identity residual.
    #[arg(long)]
    pub green_with: Option<PathBuf>,
}

#[derive(Args, Debug, Serialize)]
pub struct DeltaArgs {
    /// Graph, tree or metric file, or a generator.
    #[arg(long = "in")]
    pub input: String,
    /// Sample this many quadruples (seeded) instead of scanning all of them.
    #[arg(long)]
    pub sampled: Option<u64>,
}

#[derive(Args, Debug, Serialize)]
pub struct TreeArgs {
    #[arg(long = "in")]
    pub input: String,
    /// Largest set size of the window search on the truncation.
    #[arg(long)]
    pub max_size: Option<usize>,
    /// Also run the boundary lemma suite over connected sets up to this size.
    #[arg(long)]
    pub lemmas: Option<usize>,
    /// Write the tree document here.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug, Serialize)]
pub struct EndspaceArgs {
    #[arg(long = "in")]
    pub input: String,
    /// Also check the two-point form with this constant.
    #[arg(long)]
    pub two_point: Option<f64>,
    /// Write the end space as a metric document here.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug, Serialize)]
pub struct ApproxArgs {
    /// Metric file or generator.
    #[arg(long = "in")]
    pub input: String,
    /// Scale parameter, as `a/b` or a decimal; at most 1/6.
    #[arg(long, default_value = "1/6")]
    pub r: String,
    #[arg(long)]
    pub k_max: i32,
    /// Keep every s-th level.
    #[arg(long, default_value_t = 1)]
    pub s: u32,
    /// Search strides up to this value for a level certificate.
    #[arg(long)]
    pub search_stride: Option<u32>,
    #[arg(long, default_value_t = DEFAULT_DELTA_CAP)]
    pub delta_cap: i64,
    /// Random deepest-level pairs for the boundary check.
    #[arg(long, default_value_t = 50)]
    pub pairs: usize,
    #[arg(long, default_value_t = DEFAULT_VISUAL_SLACK)]
    pub slack: f64,
    /// Write the leveled graph here.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug, Serialize)]
pub struct NetArgs {
    #[arg(long = "in")]
    pub input: String,
    #[arg(long)]
    pub eps: f64,
    /// Write the net graph here.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug, Serialize)]
pub struct PerfectArgs {
    #[arg(long = "in")]
    pub input: String,
    #[arg(long, value_enum, default_value_t = FormArg::OnePoint)]
    pub form: FormArg,
    /// S for the one-point form, R for the two-point form.
    #[arg(long)]
    pub constant: f64,
    #[arg(long)]
    pub eps0: f64,
    /// Smallest scale checked.
    #[arg(long)]
    pub floor: f64,
    /// Extra scales to test, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub grid: Vec<f64>,
}

#[derive(Args, Debug, Serialize)]
pub struct DecompArgs {
    /// Decomposition document.
    #[arg(long)]
    pub spec: PathBuf,
}

#[derive(Args, Debug, Serialize)]
pub struct GraftArgs {
    /// Base graph or generator.
    #[arg(long)]
    pub base: String,
    /// Attachment graph or tree (trees attach by the root).
    #[arg(long)]
    pub attach: String,
    /// Port label of a graph attachment (default: its first vertex).
    #[arg(long)]
    pub port: Option<String>,
    /// Write the grafted graph here.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Write the standard decomposition here (tree attachments, needs --out).
    #[arg(long, requires = "out")]
    pub spec_out: Option<PathBuf>,
}

#[derive(Args, Debug, Serialize)]
pub struct ScanArgs {
    /// Windows in order; repeat the flag.
    #[arg(long = "in", required = true)]
    pub input: Vec<String>,
    #[arg(long)]
    pub max_size: Option<usize>,
    #[arg(long, value_enum, default_value_t = MethodArg::Auto)]
    pub method: MethodArg,
    /// Certified lower bound of the ambient graph, as a rational.
    #[arg(long)]
    pub ambient_lower: Option<String>,
}

fn write_output(path: &Path, text: &str) -> Result<Value> {
    std::fs::write(path, text)?;
    Ok(json!({"path": path.display().to_string(), "sha256": hex::encode(Sha256::digest(text.as_bytes()))}))
}

fn graph_disclosure(g: &Graph) -> Value {
    json!({"frontier_size": g.frontier().len(), "horizon": g.has_frontier(), "vertices": g.len()})
}

fn parse_scale(s: &str) -> Result<f64> {
    let r = rational::parse(s)?;
    Ok(rational::to_f64(&r))
}

pub fn cheeger(a: &CheegerArgs, ctx: &Context) -> Result<CommandOutput> {
    let src = load(&a.input, ctx.seed)?;
    let g = as_graph(&src)?;
    let m = admissible_vertices(&g).len();
    let budget = ctx.budget_or(DEFAULT_BUDGET);
    let max_size = a.max_size.unwrap_or(m);
    let b = interior_cheeger(&g, WindowSearch::new(max_size).budget(budget).method(a.method.into()))?;
    b.verify(&g)?;
    Ok(CommandOutput {
        inputs: vec![src.digest],
        results: json!({"admissible": m, "bound": b.to_json(Some(&g)), "max_size": max_size}),
        disclosures: json!({"budget": budget.to_string(), "window": graph_disclosure(&g)}),
        ..Default::default()
    })
}

fn read_function(g: &Graph, path: &Path) -> Result<VertexFunction> {
    let v: Value = serde_json::from_str(&std::fs::read_to_string(path)?)?;
    VertexFunction::from_json(g, &v)
}

pub fn certify(a: &CertifyArgs, ctx: &Context) -> Result<CommandOutput> {
    let src = load(&a.input, ctx.seed)?;
    let g = as_graph(&src)?;
    let (f, f_source) = match (&a.function, &a.distance_from, &src.input) {
        (Some(p), _, _) => (read_function(&g, p)?, json!({"file": p.display().to_string()})),
        (None, Some(l), _) => (VertexFunction::distance_from(&g, g.vertex_or_err(l)?), json!({"distance_from": l})),
        (None, None, Input::Tree(t)) => (
            VertexFunction::distance_from(&g, t.root()),
            json!({"distance_from": t.label(t.root())}),
        ),
        _ => return invalid("certify needs --function or --distance-from for a graph input"),
    };
    let cert = certificate_lower_bound(&g, &f)?;
    if let Some(b) = cert.bound() {
        b.verify(&g)?;
    }
    let mut results = json!({"certificate": cert.to_json(&g), "function": f_source});
    let mut finding = None;
    if let Some(p) = &a.green_with {
        let g2 = read_function(&g, p)?;
        let residual = green_identity_check(&g, &f, &g2)?;
        if residual != rational::zero() {
            finding = Some(format!("Green identity residual {residual} is not zero"));
        }
        results["green_residual"] = json!(residual.to_string());
    }
    Ok(CommandOutput {
        inputs: vec![src.digest],
        results,
        disclosures: json!({"window": graph_disclosure(&g)}),
        finding,
        ..Default::default()
    })
}

pub fn delta(a: &DeltaArgs, ctx: &Context) -> Result<CommandOutput> {
    let src = load(&a.input, ctx.seed)?;
    let budget = ctx.budget_or(DEFAULT_DELTA_BUDGET);
    let mode = match a.sampled {
        Some(0) => return invalid("--sampled needs a positive count"),
        Some(count) => DeltaMode::Sampled { seed: ctx.seed, count },
        None => DeltaMode::Exhaustive,
    };
    let (report, points) = match &src.input {
        Input::Metric(x) => {
            let d = delta_metric(x, mode, budget)?;
            (d.to_json(|i| x.label(i).to_string()), x.len())
        }
        _ => {
            let g = as_graph(&src)?;
            let d = delta_graph(&g, mode, budget)?;
            (d.to_json(|i| g.label(i).to_string()), g.len())
        }
    };
    Ok(CommandOutput {
        inputs: vec![src.digest],
        results: json!({"delta": report, "kind": src.input.kind(), "points": points}),
        disclosures: json!({"budget": budget.to_string()}),
        ..Default::default()
    })
}

pub fn tree(a: &TreeArgs, ctx: &Context) -> Result<CommandOutput> {
    let src = load(&a.input, ctx.seed)?;
    let t = as_tree(&src)?;
    let g = t.to_graph();
    let budget = ctx.budget_or(DEFAULT_BUDGET);
    let m = admissible_vertices(&g).len();
    let search = WindowSearch::new(a.max_size.unwrap_or(m)).budget(budget);
    let analysis = analyze(&t, Some(search))?;
    analysis.bounds.bound.verify(&g)?;
    let mut results = json!({"analysis": analysis.to_json(&t)});
    let mut finding = None;
    if let Some(size) = a.lemmas {
        let rep = lemma_suite(&t, size, budget)?;
        if !rep.all_hold() {
            finding = Some("a boundary lemma has a counterexample".into());
        }
        results["lemmas"] = rep.to_json(&t);
    }
    let mut outputs = Vec::new();
    if let Some(p) = &a.out {
        outputs.push(write_output(p, &t.to_node().to_json())?);
    }
    Ok(CommandOutput {
        inputs: vec![src.digest],
        results,
        disclosures: json!({"budget": budget.to_string(), "horizon": t.horizon(), "vertices": t.len()}),
        outputs,
        finding,
    })
}

pub fn endspace(a: &EndspaceArgs, ctx: &Context) -> Result<CommandOutput> {
    let src = load(&a.input, ctx.seed)?;
    let t = as_tree(&src)?;
    let x = end_space(&t)?;
    let d = t.horizon() as i32;
    let k = pseudo_regularity_index(&t)?.k;
    let eps0 = (-1.0f64).exp();
    let floor = (-((d - k.map_or(1, |k| k as i32)) as f64)).exp();
    let mut results = json!({
        "ends": x.len(),
        "k": k,
        "resolution_floor": floor,
    });
    if let Some(k) = k {
        let c = uniformly_perfect_check(&x, (k as f64).exp(), eps0, floor, &[])?;
        results["one_point"] = c.to_json(&x);
    }
    if let Some(r) = a.two_point {
        let c = two_point_perfectness_check(&x, r, eps0, floor, &[])?;
        let implied = if c.holds() { Some(r.ln().ceil() as i64) } else { None };
        results["two_point"] = c.to_json(&x);
        results["implied_k_ceiling"] = json!(implied);
    }
    let mut outputs = Vec::new();
    if let Some(p) = &a.out {
        outputs.push(write_output(p, &x.to_file().to_json())?);
    }
    Ok(CommandOutput {
        inputs: vec![src.digest],
        results,
        disclosures: json!({"horizon": t.horizon(), "resolution_floor": floor}),
        outputs,
        finding: None,
    })
}

pub fn approx(a: &ApproxArgs, ctx: &Context) -> Result<CommandOutput> {
    let src = load(&a.input, ctx.seed)?;
    let x = as_metric(&src)?;
    let r = parse_scale(&a.r)?;
    if a.s == 0 {
        return invalid("--s must be positive");
    }
    let mut l = build_truncated(&x, r, a.k_max)?;
    if a.s > 1 {
        l = relevel(&l, a.s)?;
    }
    let budget = ctx.budget_or(DEFAULT_DELTA_BUDGET);
    let checks = structural_checks(&l, a.delta_cap, budget)?;
    let cert = level_certificate(&l)?;
    let pairs = random_deepest_pairs(&l, a.pairs, ctx.seed);
    let boundary = boundary_identification_check(&l, &pairs, a.slack)?;
    let mut results = json!({
        "boundary": boundary.to_json(&l),
        "k0": l.k0,
        "k_max": l.k_max,
        "level_certificate": cert.to_json(&l.graph),
        "structural": checks.to_json(&l),
    });
    if let Some(s_max) = a.search_stride {
        results["stride_search"] = match find_certifying_stride(&l, s_max)? {
            Some((s, m, b)) => json!({"stride": s, "k_max": m.k_max, "bound": b.to_json(Some(&m.graph))}),
            None => Value::Null,
        };
    }
    let mut outputs = Vec::new();
    if let Some(p) = &a.out {
        let mut text = serde_json::to_string_pretty(&l.to_json()).expect("serializable");
        text.push('\n');
        outputs.push(write_output(p, &text)?);
    }
    let finding = (!checks.passes()).then(|| {
        if checks.failures.is_empty() {
            format!("delta exceeds the cap {}", a.delta_cap)
        } else {
            checks.failures.join("; ")
        }
    });
    Ok(CommandOutput {
        inputs: vec![src.digest],
        results,
        disclosures: json!({
            "budget": budget.to_string(),
            "k_max": l.k_max,
            "resolution_floor": l.scale(l.k_max),
            "vertices": l.graph.len(),
        }),
        outputs,
        finding,
    })
}

pub fn net(a: &NetArgs, ctx: &Context) -> Result<CommandOutput> {
    let src = load(&a.input, ctx.seed)?;
    let x = as_metric(&src)?;
    let g = epsilon_net(&x, a.eps)?;
    let mut outputs = Vec::new();
    if let Some(p) = &a.out {
        outputs.push(write_output(p, &GraphFile::from_graph(&g).to_json())?);
    }
    Ok(CommandOutput {
        inputs: vec![src.digest],
        results: json!({
            "connected": g.is_connected(),
            "edges": g.edge_count(),
            "max_degree": g.max_degree(),
            "vertices": g.len(),
        }),
        disclosures: json!({"eps": a.eps, "points": x.len()}),
        outputs,
        finding: None,
    })
}

pub fn perfect(a: &PerfectArgs, ctx: &Context) -> Result<CommandOutput> {
    let src = load(&a.input, ctx.seed)?;
    let x = as_metric(&src)?;
    let c = match a.form {
        FormArg::OnePoint => uniformly_perfect_check(&x, a.constant, a.eps0, a.floor, &a.grid)?,
        FormArg::TwoPoint => two_point_perfectness_check(&x, a.constant, a.eps0, a.floor, &a.grid)?,
    };
    if !c.verify(&x) {
        return Err(Error::Falsified("perfectness witness does not recheck".into()));
    }
    Ok(CommandOutput {
        inputs: vec![src.digest],
        results: json!({"certificate": c.to_json(&x), "holds": c.holds()}),
        disclosures: json!({"points": x.len(), "range": [a.floor, a.eps0]}),
        ..Default::default()
    })
}

pub fn decomp(a: &DecompArgs, _ctx: &Context) -> Result<CommandOutput> {
    let bytes = std::fs::read(&a.spec)?;
    let digest = json!({"path": a.spec.display().to_string(), "sha256": hex::encode(Sha256::digest(&bytes))});
    let spec = load_decomposition(&a.spec)?;
    let report = validate(&spec);
    let g = &spec.ambient;
    let mut results = json!({"validation": report.to_json(g)});
    let mut finding = None;
    if report.valid() {
        let b = decomposition_bound(&spec, &report)?;
        results["bound"] = b.to_json(Some(g));
        results["bound_general"] = json!(bound_general(report.mu, spec.big_r, &spec.r)?.to_string());
        if report.strong {
            results["bound_strong"] = json!(bound_strong(report.mu, spec.big_r, &spec.r)?.to_string());
        }
    } else {
        finding = Some(format!("{} decomposition clause(s) violated", report.violations.len()));
    }
    Ok(CommandOutput {
        inputs: vec![digest],
        results,
        disclosures: json!({"ambient": graph_disclosure(g), "pieces": spec.pieces.len()}),
        finding,
        ..Default::default()
    })
}

fn relative_to(path: &Path, dir: &Path) -> Result<String> {
    let abs = std::fs::canonicalize(path)?;
    let dir = std::fs::canonicalize(dir)?;
    Ok(match abs.strip_prefix(&dir) {
        Ok(rel) => rel.display().to_string(),
        Err(_) => abs.display().to_string(),
    })
}

pub fn graft(a: &GraftArgs, ctx: &Context) -> Result<CommandOutput> {
    let base_src = load(&a.base, ctx.seed)?;
    let att_src: Loaded = load(&a.attach, ctx.seed)?;
    let base = as_graph(&base_src)?;
    let (layout, spec) = match &att_src.input {
        Input::Tree(t) if a.port.is_none() => {
            let (layout, spec) = tree_graft_decomposition(&base, t)?;
            (layout, Some(spec))
        }
        _ => {
            let att = as_graph(&att_src)?;
            let port = match &a.port {
                Some(l) => att.vertex_or_err(l)?,
                None => 0,
            };
            (graft_layout(&base, &att, port)?, None)
        }
    };
    if a.spec_out.is_some() && spec.is_none() {
        return invalid("--spec-out needs a tree attachment attached by its root");
    }
    let g = &layout.graph;
    let mut outputs = Vec::new();
    if let Some(p) = &a.out {
        outputs.push(write_output(p, &GraphFile::from_graph(g).to_json())?);
    }
    if let (Some(sp), Some(spec), Some(out)) = (&a.spec_out, &spec, &a.out) {
        let dir = sp.parent().filter(|d| !d.as_os_str().is_empty()).unwrap_or(Path::new("."));
        let file = DecompositionFile::from_spec(spec, &relative_to(out, dir)?);
        outputs.push(write_output(sp, &file.to_json())?);
    }
    let mut results = json!({
        "base_vertices": layout.base_len,
        "edges": g.edge_count(),
        "isometry_checked": layout.isometry_checked,
        "max_degree": g.max_degree(),
        "vertices": g.len(),
    });
    if let Some(spec) = &spec {
        results["decomposition"] = json!({"R": spec.big_r, "pieces": spec.pieces.len(), "r": spec.r.to_string()});
    }
    Ok(CommandOutput {
        inputs: vec![base_src.digest, att_src.digest],
        results,
        disclosures: json!({"graft": graph_disclosure(g)}),
        outputs,
        finding: None,
    })
}

pub fn scan(a: &ScanArgs, ctx: &Context) -> Result<CommandOutput> {
    let mut windows = Vec::with_capacity(a.input.len());
    let mut inputs = Vec::with_capacity(a.input.len());
    for s in &a.input {
        let src = load(s, ctx.seed)?;
        windows.push(as_graph(&src)?);
        inputs.push(src.digest);
    }
    let ambient_lower: Option<Rational> = a.ambient_lower.as_deref().map(rational::parse).transpose()?;
    let budget = ctx.budget_or(DEFAULT_BUDGET);
    let config = ScanConfig {
        max_size: a.max_size,
        method: a.method.into(),
        budget,
        ambient_lower,
    };
    let rep = converse_scan(&windows, &config)?;
    let finding = (rep.squeeze == Some(false)).then(|| "a window value falls below the ambient lower bound".to_string());
    Ok(CommandOutput {
        inputs,
        results: rep.to_json(),
        disclosures: json!({
            "budget": budget.to_string(),
            "windows": windows.iter().map(graph_disclosure).collect::<Vec<_>>(),
        }),
        outputs: Vec::new(),
        finding,
    })
}
