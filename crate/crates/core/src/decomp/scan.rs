//! Interior Cheeger constants along a sequence of windows.

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::graphcore::{admissible_vertices, interior_cheeger, Graph, WindowMethod, WindowSearch, DEFAULT_BUDGET};
use crate::rational::{self, Rational};

#[derive(Clone, Debug)]
pub struct ScanConfig {
    /// Largest set size; `None` means every admissible vertex.
    pub max_size: Option<usize>,
    pub method: WindowMethod,
    pub budget: u128,
    /// Certified lower bound of the ambient graph, checked against every window.
    pub ambient_lower: Option<Rational>,
}

impl Default for ScanConfig {
    fn default() -> Self {
        ScanConfig {
            max_size: None,
            method: WindowMethod::Auto,
            budget: DEFAULT_BUDGET,
            ambient_lower: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ScanEntry {
    pub admissible: usize,
    pub h_interior: Rational,
    pub method: WindowMethod,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConverseReport {
    pub entries: Vec<ScanEntry>,
    /// Non-increasing, with the last value at most the first times
    /// `(s_first / s_last)^{1/3}` for admissible sizes `s`.
    pub decay: bool,
    pub floor: Rational,
    /// Every window value is `≥ ambient_lower`.
    pub squeeze: Option<bool>,
}

impl ConverseReport {
    pub fn to_json(&self) -> Value {
        json!({
            "decay": self.decay,
            "entries": self.entries.iter().map(|e| json!({
                "admissible": e.admissible,
                "h_interior": e.h_interior.to_string(),
                "method": e.method.name(),
            })).collect::<Vec<_>>(),
            "floor": self.floor.to_string(),
            "squeeze": self.squeeze,
        })
    }
}

pub fn converse_scan(windows: &[Graph], config: &ScanConfig) -> Result<ConverseReport> {
    if windows.is_empty() {
        return Err(Error::InvalidInput("no windows to scan".into()));
    }
    let mut entries = Vec::with_capacity(windows.len());
    for g in windows {
        let m = admissible_vertices(g).len();
        let size = config.max_size.map_or(m, |s| s.min(m));
        let search = WindowSearch::new(size).budget(config.budget).method(config.method);
        let b = interior_cheeger(g, search)?;
        let method = match &b.upper_witness {
            Some(crate::graphcore::Provenance::BruteForceWindow { method, .. }) => *method,
            _ => config.method,
        };
        entries.push(ScanEntry {
            admissible: m,
            h_interior: b.upper.expect("window search yields an upper endpoint"),
            method,
        });
    }
    let values: Vec<&Rational> = entries.iter().map(|e| &e.h_interior).collect();
    let monotone = values.windows(2).all(|w| w[1] <= w[0]);
    let (first, last) = (entries.first().unwrap(), entries.last().unwrap());
    let shrink = rational::to_f64(&last.h_interior) / rational::to_f64(&first.h_interior);
    let growth = first.admissible as f64 / last.admissible as f64;
    let decay = entries.len() >= 2 && monotone && shrink <= growth.cbrt() + 1e-12;
    let floor = values.iter().min().map(|v| (*v).clone()).unwrap();
    let squeeze = config.ambient_lower.as_ref().map(|l| values.iter().all(|v| *v >= l));
    Ok(ConverseReport {
        entries,
        decay,
        floor,
        squeeze,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphcore::path_graph;
    use crate::rational::ratio;
    use crate::trees::homogeneous_tree;

    fn path_window(n: usize) -> Graph {
        path_graph(n).with_frontier(&[0, n - 1]).unwrap()
    }

    #[test]
    fn paths_decay() {
        let ws: Vec<Graph> = [8, 12, 20, 36].iter().map(|&n| path_window(n)).collect();
        let rep = converse_scan(&ws, &ScanConfig::default()).unwrap();
        let hs: Vec<Rational> = rep.entries.iter().map(|e| e.h_interior.clone()).collect();
        assert_eq!(hs, vec![ratio(2, 4), ratio(2, 8), ratio(2, 16), ratio(2, 32)]);
        assert!(rep.decay);
    }

    #[test]
    fn regular_trees_keep_a_floor() {
        let ws: Vec<Graph> = (4..=6).map(|d| homogeneous_tree(3, d).to_graph()).collect();
        let cfg = ScanConfig {
            ambient_lower: Some(ratio(1, 7)),
            ..ScanConfig::default()
        };
        let rep = converse_scan(&ws, &cfg).unwrap();
        assert!(!rep.decay);
        assert_eq!(rep.squeeze, Some(true));
        assert!(rep.floor >= ratio(1, 7));
    }
}
