//! Resolution of input arguments: a file path, or a generator spec when no
//! such file exists.

use std::path::Path;

use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::error::{invalid, Error, Result};
use crate::graphcore::{cycle_graph, grid_window, path_graph, Connectivity, Graph, GraphFile};
use crate::metricspace::{cantor_sample, interval_sample, line_space, two_point, FiniteMetricSpace, MetricFile};
use crate::trees::{
    comb, end_space, growing_chain, homogeneous_tree, layered_tree, random_branching_tree, RootedTree, TreeNode,
};

pub const GENERATORS: &str = "\
graphs:  path:N (frontier = endpoints), grid:WxH (frontier = border), cycle:N
trees:   tK_dD, homogeneous:K:D, chain:D, comb:D:L, layered:D:b0,b1,..., random:D:MIN:MAX (uses --seed)
metrics: cantor:DEPTH, interval:N, two-point:D, singleton, line:x1,x2,..., ends:<tree generator>";

#[derive(Clone, Debug)]
pub enum Input {
    Graph(Graph),
    Tree(RootedTree),
    Metric(FiniteMetricSpace),
}

impl Input {
    pub fn kind(&self) -> &'static str {
        match self {
            Input::Graph(_) => "graph",
            Input::Tree(_) => "tree",
            Input::Metric(_) => "metric",
        }
    }
}

/// Loaded input with its digest entry for the report.
pub struct Loaded {
    pub input: Input,
    pub digest: Value,
}

pub fn load(src: &str, seed: u64) -> Result<Loaded> {
    let path = Path::new(src);
    if path.is_file() {
        let bytes = std::fs::read(path)?;
        let digest = json!({"path": src, "sha256": hex::encode(Sha256::digest(&bytes))});
        let text = String::from_utf8(bytes).map_err(|_| Error::InvalidInput(format!("{src} is not UTF-8")))?;
        let v: Value = serde_json::from_str(&text)?;
        let input = if v.get("edges").is_some() {
            Input::Graph(GraphFile::parse(&text)?.to_graph(Connectivity::Allow)?)
        } else if v.get("dist").is_some() {
            let f: MetricFile = serde_json::from_value(v)?;
            Input::Metric(f.to_space()?)
        } else if v.get("name").is_some() {
            let node: TreeNode = serde_json::from_value(v)?;
            Input::Tree(RootedTree::from_node(&node)?)
        } else {
            return invalid(format!("{src}: not a graph, tree or metric document"));
        };
        return Ok(Loaded { input, digest });
    }
    let input = generate(src, seed)?;
    Ok(Loaded {
        input,
        digest: json!({"generator": src}),
    })
}

fn num<T: std::str::FromStr>(s: &str, what: &str) -> Result<T> {
    s.parse()
        .map_err(|_| Error::InvalidInput(format!("{what}: cannot parse {s:?}")))
}

fn tree_generator(spec: &str, seed: u64) -> Result<Option<RootedTree>> {
    if let Some(rest) = spec.strip_prefix('t') {
        if let Some((k, d)) = rest.split_once("_d") {
            if let (Ok(k), Ok(d)) = (k.parse::<usize>(), d.parse::<u32>()) {
                return homogeneous(k, d).map(Some);
            }
        }
    }
    let parts: Vec<&str> = spec.split(':').collect();
    let t = match parts.as_slice() {
        ["homogeneous", k, d] => homogeneous(num(k, "K")?, num(d, "D")?)?,
        ["chain", d] => growing_chain(positive(num(d, "D")?)?),
        ["comb", d, l] => comb(positive(num(d, "D")?)?, num(l, "L")?),
        ["layered", d, bs] => {
            let bs: Vec<usize> = bs.split(',').map(|b| num(b, "branching")).collect::<Result<_>>()?;
            if bs.is_empty() || bs.contains(&0) {
                return invalid("layered branching numbers must be positive");
            }
            layered_tree(positive(num(d, "D")?)?, move |t| bs[t as usize % bs.len()])
        }
        ["random", d, lo, hi] => {
            let (lo, hi): (usize, usize) = (num(lo, "MIN")?, num(hi, "MAX")?);
            if lo == 0 || lo > hi {
                return invalid("random tree needs 1 <= MIN <= MAX");
            }
            random_branching_tree(positive(num(d, "D")?)?, lo, hi, seed)
        }
        _ => return Ok(None),
    };
    Ok(Some(t))
}

fn positive(d: u32) -> Result<u32> {
    if d == 0 {
        return invalid("depth must be at least 1");
    }
    Ok(d)
}

fn homogeneous(k: usize, d: u32) -> Result<RootedTree> {
    if k < 2 {
        return invalid("homogeneous trees need degree at least 2");
    }
    Ok(homogeneous_tree(k, positive(d)?))
}

fn generate(spec: &str, seed: u64) -> Result<Input> {
    if let Some(t) = tree_generator(spec, seed)? {
        return Ok(Input::Tree(t));
    }
    let parts: Vec<&str> = spec.splitn(2, ':').collect();
    let input = match parts.as_slice() {
        ["path", n] => {
            let n: usize = num(n, "N")?;
            if n < 2 {
                return invalid("path needs at least 2 vertices");
            }
            Input::Graph(path_graph(n).with_frontier(&[0, n - 1])?)
        }
        ["grid", wh] => {
            let (w, h) = wh
                .split_once('x')
                .ok_or_else(|| Error::InvalidInput("grid spec is grid:WxH".into()))?;
            let (w, h): (usize, usize) = (num(w, "W")?, num(h, "H")?);
            if w == 0 || h == 0 {
                return invalid("grid sides must be positive");
            }
            Input::Graph(grid_window(w, h))
        }
        ["cycle", n] => {
            let n: usize = num(n, "N")?;
            if n < 3 {
                return invalid("cycle needs at least 3 vertices");
            }
            Input::Graph(cycle_graph(n))
        }
        ["cantor", d] => Input::Metric(cantor_sample(positive(num(d, "DEPTH")?)?)),
        ["interval", n] => {
            let n: usize = num(n, "N")?;
            if n < 2 {
                return invalid("interval sample needs at least 2 points");
            }
            Input::Metric(interval_sample(n))
        }
        ["two-point", d] => {
            let d: f64 = num(d, "D")?;
            if !(d > 0.0 && d.is_finite()) {
                return invalid("two-point distance must be positive");
            }
            Input::Metric(two_point(d))
        }
        ["singleton"] => Input::Metric(FiniteMetricSpace::new(vec!["o".into()], vec![vec![0.0]])?),
        ["line", xs] => {
            let xs: Vec<f64> = xs.split(',').map(|x| num(x, "x")).collect::<Result<_>>()?;
            let mut sorted = xs.clone();
            sorted.sort_by(f64::total_cmp);
            if sorted.windows(2).any(|w| w[0] == w[1]) || xs.iter().any(|x| !x.is_finite()) {
                return invalid("line points must be finite and distinct");
            }
            Input::Metric(line_space(&xs))
        }
        ["ends", t] => match tree_generator(t, seed)? {
            Some(t) => Input::Metric(end_space(&t)?),
            None => return invalid(format!("ends: unknown tree generator {t:?}")),
        },
        _ => return invalid(format!("{spec:?} is neither a file nor a generator\n{GENERATORS}")),
    };
    Ok(input)
}

pub fn as_graph(l: &Loaded) -> Result<Graph> {
    match &l.input {
        Input::Graph(g) => Ok(g.clone()),
        Input::Tree(t) => Ok(t.to_graph()),
        Input::Metric(_) => invalid("expected a graph or tree input, got a metric space"),
    }
}

pub fn as_tree(l: &Loaded) -> Result<RootedTree> {
    match &l.input {
        Input::Tree(t) => Ok(t.clone()),
        other => invalid(format!("expected a tree input, got a {}", other.kind())),
    }
}

pub fn as_metric(l: &Loaded) -> Result<FiniteMetricSpace> {
    match &l.input {
        Input::Metric(x) => Ok(x.clone()),
        other => invalid(format!("expected a metric input, got a {}", other.kind())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generators_resolve() {
        assert!(matches!(load("t3_d6", 0).unwrap().input, Input::Tree(ref t) if t.len() == 190));
        assert!(matches!(load("grid:7x7", 0).unwrap().input, Input::Graph(ref g) if g.frontier().len() == 24));
        assert!(matches!(load("cantor:5", 0).unwrap().input, Input::Metric(ref x) if x.len() == 32));
        assert!(matches!(load("ends:t3_d3", 0).unwrap().input, Input::Metric(ref x) if x.len() == 12));
        assert!(load("nonsense:3", 0).is_err());
        assert!(load("path:1", 0).is_err());
    }
}
