//! Gromov products, the four-point hyperbolicity constant and a
//! finite-horizon pole check.

use std::ops::{Add, Sub};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::error::{invalid, Error, Result};
use crate::graphcore::{DistanceMatrix, Graph, Vertex, UNREACHABLE};
use crate::metricspace::FiniteMetricSpace;
use crate::rational::{ratio, Rational};

/// Default cap on `n⁴` for exhaustive scans.
pub const DEFAULT_DELTA_BUDGET: u128 = 1 << 36;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DeltaMode {
    Exhaustive,
    Sampled { seed: u64, count: u64 },
}

/// δ together with a quadruple `(x, y, z, o)` attaining it.
#[derive(Clone, Debug, PartialEq)]
pub struct DeltaReport<T> {
    pub delta: T,
    pub witness: Option<[usize; 4]>,
    pub mode: DeltaMode,
    /// Set in sampled mode: `delta` is only a lower bound.
    pub lower_bound_only: bool,
}

impl<T: std::fmt::Display> DeltaReport<T> {
    pub fn to_json(&self, label: impl Fn(usize) -> String) -> Value {
        let mode = match self.mode {
            DeltaMode::Exhaustive => json!({"kind": "exhaustive"}),
            DeltaMode::Sampled { seed, count } => json!({"kind": "sampled", "seed": seed, "count": count}),
        };
        json!({
            "delta": self.delta.to_string(),
            "witness": self.witness.map(|w| w.iter().map(|&i| label(i)).collect::<Vec<_>>()),
            "mode": mode,
            "lower_bound_only": self.lower_bound_only,
        })
    }
}

/// `(x|y)_o = ½(d(x,o) + d(y,o) − d(x,y))` in a graph.
pub fn gromov_product_graph(g: &Graph, x: Vertex, y: Vertex, o: Vertex) -> Result<Rational> {
    for v in [x, y, o] {
        if v >= g.len() {
            return invalid(format!("vertex {v} is not in the graph"));
        }
    }
    let dx = g.distances_from(x);
    let dy = g.distances_from(y);
    if dx[o] == UNREACHABLE || dy[o] == UNREACHABLE || dx[y] == UNREACHABLE {
        return invalid("points lie in different components");
    }
    Ok(ratio(dx[o] as i64 + dy[o] as i64 - dx[y] as i64, 2))
}

pub fn gromov_product_metric(xs: &FiniteMetricSpace, x: usize, y: usize, o: usize) -> Result<f64> {
    if [x, y, o].iter().any(|&p| p >= xs.len()) {
        return invalid("point is not in the space");
    }
    Ok(0.5 * (xs.dist(x, o) + xs.dist(y, o) - xs.dist(x, y)))
}

/// `min{(x|z)_o, (z|y)_o} − (x|y)_o`, doubled so integer metrics stay integral.
fn four_point_doubled<T>(d: &impl Fn(usize, usize) -> T, x: usize, y: usize, z: usize, o: usize) -> T
where
    T: Copy + PartialOrd + Add<Output = T> + Sub<Output = T>,
{
    let xz = d(x, o) + d(z, o) - d(x, z);
    let zy = d(z, o) + d(y, o) - d(z, y);
    let xy = d(x, o) + d(y, o) - d(x, y);
    let m = if xz < zy { xz } else { zy };
    m - xy
}

/// Largest `L − M` over 4-subsets, where `L ≥ M` are the two largest pair
/// sums; this equals twice the four-point quantity at the right ordering.
fn scan_exhaustive<T>(n: usize, d: impl Fn(usize, usize) -> T + Sync, zero: T) -> (T, Option<[usize; 4]>)
where
    T: Copy + PartialOrd + Add<Output = T> + Sub<Output = T> + Send + Sync,
{
    let per_a: Vec<Option<(T, [usize; 4])>> = (0..n)
        .into_par_iter()
        .map(|a| {
            let mut best: Option<(T, [usize; 4])> = None;
            for b in a + 1..n {
                let dab = d(a, b);
                for c in b + 1..n {
                    let (dac, dbc) = (d(a, c), d(b, c));
                    for e in c + 1..n {
                        let s1 = dab + d(c, e);
                        let s2 = dac + d(b, e);
                        let s3 = d(a, e) + dbc;
                        // largest sum and the ordering that realises it
                        let (l, m, w) = if s1 >= s2 && s1 >= s3 {
                            (s1, if s2 > s3 { s2 } else { s3 }, [a, b, c, e])
                        } else if s2 >= s3 {
                            (s2, if s1 > s3 { s1 } else { s3 }, [a, c, b, e])
                        } else {
                            (s3, if s1 > s2 { s1 } else { s2 }, [b, c, a, e])
                        };
                        let v = l - m;
                        if best.as_ref().is_none_or(|(bv, _)| v > *bv) {
                            best = Some((v, w));
                        }
                    }
                }
            }
            best
        })
        .collect();
    let mut best: Option<(T, [usize; 4])> = None;
    for (v, w) in per_a.into_iter().flatten() {
        if best.as_ref().is_none_or(|(bv, _)| v > *bv) {
            best = Some((v, w));
        }
    }
    match best {
        Some((v, w)) if v > zero => (v, Some(w)),
        Some((_, w)) => (zero, Some(w)),
        None => (zero, None),
    }
}

fn scan_sampled<T>(n: usize, d: impl Fn(usize, usize) -> T, zero: T, seed: u64, count: u64) -> (T, Option<[usize; 4]>)
where
    T: Copy + PartialOrd + Add<Output = T> + Sub<Output = T>,
{
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best: Option<(T, [usize; 4])> = None;
    for _ in 0..count {
        let q = [0; 4].map(|_| rng.gen_range(0..n));
        let v = four_point_doubled(&d, q[0], q[1], q[2], q[3]);
        if best.as_ref().is_none_or(|(bv, _)| v > *bv) {
            best = Some((v, q));
        }
    }
    match best {
        Some((v, w)) if v > zero => (v, Some(w)),
        Some((_, w)) => (zero, Some(w)),
        None => (zero, None),
    }
}

fn check_budget(n: usize, mode: DeltaMode, budget: u128) -> Result<()> {
    if let DeltaMode::Exhaustive = mode {
        let need = (n as u128).pow(4);
        if need > budget {
            return Err(Error::BudgetExceeded { required: need, budget });
        }
    }
    Ok(())
}

/// Four-point δ of a connected graph with its BFS metric.
pub fn delta_graph(g: &Graph, mode: DeltaMode, budget: u128) -> Result<DeltaReport<Rational>> {
    if !g.is_connected() {
        return invalid("delta needs a connected graph");
    }
    check_budget(g.len(), mode, budget)?;
    let dm = g.distance_matrix();
    Ok(delta_from_matrix(&dm, mode))
}

/// δ from a precomputed distance table (must be connected).
pub fn delta_from_matrix(dm: &DistanceMatrix, mode: DeltaMode) -> DeltaReport<Rational> {
    let d = |a: usize, b: usize| dm.get(a, b) as i64;
    let (v, w) = match mode {
        DeltaMode::Exhaustive => scan_exhaustive(dm.len(), d, 0i64),
        DeltaMode::Sampled { seed, count } => scan_sampled(dm.len(), d, 0i64, seed, count),
    };
    DeltaReport {
        delta: ratio(v, 2),
        witness: w,
        mode,
        lower_bound_only: matches!(mode, DeltaMode::Sampled { .. }),
    }
}

pub fn delta_metric(xs: &FiniteMetricSpace, mode: DeltaMode, budget: u128) -> Result<DeltaReport<f64>> {
    check_budget(xs.len(), mode, budget)?;
    let d = |a: usize, b: usize| xs.dist(a, b);
    let (v, w) = match mode {
        DeltaMode::Exhaustive => scan_exhaustive(xs.len(), d, 0.0f64),
        DeltaMode::Sampled { seed, count } => scan_sampled(xs.len(), d, 0.0f64, seed, count),
    };
    Ok(DeltaReport {
        delta: v / 2.0,
        witness: w,
        mode,
        lower_bound_only: matches!(mode, DeltaMode::Sampled { .. }),
    })
}

/// Re-evaluates `min{(x|z)_o,(z|y)_o} − (x|y)_o` at a witness.
pub fn four_point_value_graph(dm: &DistanceMatrix, w: [usize; 4]) -> Rational {
    let d = |a: usize, b: usize| dm.get(a, b) as i64;
    ratio(four_point_doubled(&d, w[0], w[1], w[2], w[3]), 2)
}

pub fn four_point_value_metric(xs: &FiniteMetricSpace, w: [usize; 4]) -> f64 {
    let d = |a: usize, b: usize| xs.dist(a, b);
    four_point_doubled(&d, w[0], w[1], w[2], w[3]) / 2.0
}

/// Finite-horizon pole check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PoleReport {
    pub horizon: u32,
    /// Largest distance from a vertex of `B̄(v, D)` to the ray-covered set.
    pub defect: u32,
    /// First vertex attaining the defect.
    pub farthest: Vertex,
    /// Vertices on geodesics from `v` to the sphere `S(v, D)`.
    pub covered: Vec<Vertex>,
}

/// Distance from the ball `B̄(v, D)` to the union of geodesics from `v` to
/// the sphere of radius `D`.
pub fn pole_defect(g: &Graph, v: Vertex, horizon: u32) -> Result<PoleReport> {
    if v >= g.len() {
        return invalid(format!("vertex {v} is not in the graph"));
    }
    let dv = g.distances_from(v);
    let ecc = dv.iter().copied().filter(|&d| d != UNREACHABLE).max().unwrap_or(0);
    if horizon > ecc {
        return Err(Error::InvalidHorizon(format!("horizon {horizon} exceeds eccentricity {ecc}")));
    }
    let mut order: Vec<Vertex> = (0..g.len()).filter(|&x| dv[x] <= horizon).collect();
    order.sort_by_key(|&x| std::cmp::Reverse(dv[x]));
    let mut on = vec![false; g.len()];
    for &x in &order {
        on[x] = dv[x] == horizon || g.neighbors(x).iter().any(|&y| dv[y] == dv[x] + 1 && on[y]);
    }
    let covered: Vec<Vertex> = (0..g.len()).filter(|&x| on[x]).collect();
    let dz = g.distances_from_set(&covered);
    let mut defect = 0;
    let mut farthest = v;
    for x in 0..g.len() {
        if dv[x] <= horizon && dz[x] > defect {
            defect = dz[x];
            farthest = x;
        }
    }
    Ok(PoleReport {
        horizon,
        defect,
        farthest,
        covered,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphcore::{cycle_graph, path_graph};
    use crate::rational::int;

    #[test]
    fn products() {
        let g = path_graph(3);
        assert_eq!(gromov_product_graph(&g, 1, 2, 0).unwrap(), int(1));
        assert_eq!(gromov_product_graph(&g, 1, 1, 1).unwrap(), int(0));
        assert!(gromov_product_graph(&g, 1, 7, 0).is_err());
    }

    #[test]
    fn cycles() {
        let r = delta_graph(&cycle_graph(4), DeltaMode::Exhaustive, DEFAULT_DELTA_BUDGET).unwrap();
        assert_eq!(r.delta, int(1));
        let dm = cycle_graph(4).distance_matrix();
        assert_eq!(four_point_value_graph(&dm, r.witness.unwrap()), int(1));
        let r6 = delta_graph(&cycle_graph(6), DeltaMode::Exhaustive, DEFAULT_DELTA_BUDGET).unwrap();
        assert!(r6.delta >= int(1));
        let dm6 = cycle_graph(6).distance_matrix();
        assert_eq!(four_point_value_graph(&dm6, r6.witness.unwrap()), r6.delta);
    }

    #[test]
    fn paths_are_trees() {
        let r = delta_graph(&path_graph(9), DeltaMode::Exhaustive, DEFAULT_DELTA_BUDGET).unwrap();
        assert_eq!(r.delta, int(0));
    }

    #[test]
    fn budget_and_sampling() {
        let g = cycle_graph(12);
        assert!(matches!(
            delta_graph(&g, DeltaMode::Exhaustive, 100),
            Err(Error::BudgetExceeded { .. })
        ));
        let s = delta_graph(&g, DeltaMode::Sampled { seed: 7, count: 500 }, 100).unwrap();
        assert!(s.lower_bound_only);
        let e = delta_graph(&g, DeltaMode::Exhaustive, DEFAULT_DELTA_BUDGET).unwrap();
        assert!(s.delta <= e.delta);
    }

    #[test]
    fn pole_on_path() {
        let g = path_graph(7);
        let p = pole_defect(&g, 3, 3).unwrap();
        assert_eq!(p.defect, 0);
        assert!(matches!(pole_defect(&g, 3, 4), Err(Error::InvalidHorizon(_))));
    }
}
