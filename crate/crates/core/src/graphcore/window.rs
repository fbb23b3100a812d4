use rayon::prelude::*;

use super::bound::{CheegerBound, Provenance};
use super::connected::connected_subsets;
use super::graph::{Graph, Vertex};
use super::treedp;
use crate::error::{invalid, Error, Result};
use crate::rational::{ratio, Rational};

/// Default cap on the number of subsets an exact search may visit.
pub const DEFAULT_BUDGET: u128 = 1 << 22;

/// `∂A`: vertices at distance exactly 1 from `A`, sorted.
pub fn boundary(g: &Graph, a: &[Vertex]) -> Result<Vec<Vertex>> {
    let a = g.check_set(a)?;
    let mut in_a = vec![false; g.len()];
    for &v in &a {
        in_a[v] = true;
    }
    let mut out: Vec<Vertex> = a
        .iter()
        .flat_map(|&v| g.neighbors(v).iter().copied())
        .filter(|&w| !in_a[w])
        .collect();
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

/// `|∂A| / |A|`.
pub fn cheeger_ratio(g: &Graph, a: &[Vertex]) -> Result<Rational> {
    let a = g.check_set(a)?;
    let b = boundary(g, &a)?;
    Ok(ratio(b.len() as i64, a.len() as i64))
}

/// Vertices at distance at least 2 from the frontier (all vertices when the
/// frontier is empty).
pub fn admissible_mask(g: &Graph) -> Vec<bool> {
    let fr = g.frontier();
    if fr.is_empty() {
        return vec![true; g.len()];
    }
    g.distances_from_set(&fr).into_iter().map(|d| d >= 2).collect()
}

pub fn admissible_vertices(g: &Graph) -> Vec<Vertex> {
    admissible_mask(g).iter().enumerate().filter(|(_, &a)| a).map(|(v, _)| v).collect()
}

/// `Σ_{k=1}^{max} C(m, k)`, saturating.
pub fn subset_count(m: usize, max_size: usize) -> u128 {
    let mut total: u128 = 0;
    let mut c: u128 = 1;
    for k in 1..=max_size.min(m) {
        c = c.saturating_mul((m - k + 1) as u128) / k as u128;
        if c == u128::MAX {
            return u128::MAX;
        }
        total = total.saturating_add(c);
    }
    total
}

/// How the exact window minimum is computed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WindowMethod {
    /// Enumeration when within budget, otherwise dynamic programming on forests.
    Auto,
    /// Explicit enumeration of every admissible subset.
    Enumerate,
    /// Exact dynamic programming over a forest window.
    TreeDp,
    /// Every connected admissible subset. Its minimum is still a ratio of a
    /// real set, so an upper bound, but may exceed the unrestricted minimum.
    Connected,
}

impl WindowMethod {
    pub fn name(&self) -> &'static str {
        match self {
            WindowMethod::Auto => "auto",
            WindowMethod::Enumerate => "enumerate",
            WindowMethod::TreeDp => "tree-dp",
            WindowMethod::Connected => "connected",
        }
    }
}

/// Parameters of an exact window search.
#[derive(Clone, Copy, Debug)]
pub struct WindowSearch {
    pub max_size: usize,
    pub budget: u128,
    pub method: WindowMethod,
}

impl WindowSearch {
    pub fn new(max_size: usize) -> Self {
        WindowSearch {
            max_size,
            budget: DEFAULT_BUDGET,
            method: WindowMethod::Auto,
        }
    }

    pub fn budget(mut self, budget: u128) -> Self {
        self.budget = budget;
        self
    }

    pub fn method(mut self, method: WindowMethod) -> Self {
        self.method = method;
        self
    }
}

/// Exact minimum of the window search, before it is wrapped in a bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WindowMinimum {
    pub boundary: usize,
    pub set: Vec<Vertex>,
    pub method: WindowMethod,
}

impl WindowMinimum {
    pub fn ratio(&self) -> Rational {
        ratio(self.boundary as i64, self.set.len() as i64)
    }
}

/// Interior Cheeger constant `h^i` of the window, restricted to sets of size
/// at most `max_size`, with the default budget.
pub fn interior_cheeger_bruteforce(g: &Graph, max_size: usize) -> Result<CheegerBound> {
    interior_cheeger(g, WindowSearch::new(max_size))
}

pub fn interior_cheeger(g: &Graph, search: WindowSearch) -> Result<CheegerBound> {
    let min = window_minimum(g, search)?;
    let m = admissible_vertices(g).len();
    let kind = if min.method == WindowMethod::Connected { "connected admissible" } else { "admissible" };
    let region = format!(
        "all {kind} subsets of size <= {} among {} admissible vertices",
        search.max_size, m
    );
    Ok(CheegerBound::upper_only(
        min.ratio(),
        Provenance::BruteForceWindow {
            boundary: min.boundary,
            max_size: search.max_size,
            method: min.method,
            set: min.set,
        },
    )
    .with_region(region))
}

pub fn window_minimum(g: &Graph, search: WindowSearch) -> Result<WindowMinimum> {
    let adm = admissible_vertices(g);
    if adm.is_empty() {
        return Err(Error::EmptyWindow("no vertex at distance >= 2 from the frontier".into()));
    }
    if search.max_size == 0 || search.max_size > adm.len() {
        return invalid(format!(
            "max_size must lie in 1..={} (the number of admissible vertices)",
            adm.len()
        ));
    }
    if search.method == WindowMethod::Connected {
        return connected_minimum(g, search);
    }
    let count = subset_count(adm.len(), search.max_size);
    let within = count <= search.budget;
    match search.method {
        WindowMethod::Enumerate | WindowMethod::Auto if within => Ok(enumerate(g, &adm, search.max_size)),
        WindowMethod::Enumerate => Err(Error::BudgetExceeded {
            required: count,
            budget: search.budget,
        }),
        WindowMethod::TreeDp | WindowMethod::Auto if g.is_forest() => {
            let mask = admissible_mask(g);
            let (boundary, set) = treedp::min_boundary_ratio(g, &mask, search.max_size)
                .ok_or_else(|| Error::EmptyWindow("no admissible subset".into()))?;
            Ok(WindowMinimum {
                boundary,
                set,
                method: WindowMethod::TreeDp,
            })
        }
        WindowMethod::TreeDp => invalid("tree dynamic programming needs a forest window"),
        WindowMethod::Auto => Err(Error::BudgetExceeded {
            required: count,
            budget: search.budget,
        }),
        WindowMethod::Connected => unreachable!(),
    }
}

fn connected_minimum(g: &Graph, search: WindowSearch) -> Result<WindowMinimum> {
    let mask = admissible_mask(g);
    let mut best: Option<Best> = None;
    let mut mark = vec![false; g.len()];
    let mut seen = vec![false; g.len()];
    connected_subsets(g, &mask, search.max_size, search.budget, |a| {
        for &v in a {
            mark[v] = true;
        }
        let mut b = 0;
        let mut touched = Vec::new();
        for &v in a {
            for &w in g.neighbors(v) {
                if !mark[w] && !seen[w] {
                    seen[w] = true;
                    touched.push(w);
                    b += 1;
                }
            }
        }
        for w in touched {
            seen[w] = false;
        }
        for &v in a {
            mark[v] = false;
        }
        let mut set = a.to_vec();
        set.sort_unstable();
        let cand = Best { boundary: b, set };
        if best.as_ref().is_none_or(|cur| cand.improves_on(cur)) {
            best = Some(cand);
        }
    })?;
    let b = best.expect("at least one admissible vertex");
    Ok(WindowMinimum {
        boundary: b.boundary,
        set: b.set,
        method: WindowMethod::Connected,
    })
}

#[derive(Clone)]
struct Best {
    boundary: usize,
    set: Vec<Vertex>,
}

impl Best {
    /// Strictly better ratio, or equal ratio with lexicographically smaller set.
    fn improves_on(&self, other: &Best) -> bool {
        let l = self.boundary as u128 * other.set.len() as u128;
        let r = other.boundary as u128 * self.set.len() as u128;
        l < r || (l == r && self.set < other.set)
    }
}

struct Walker<'a> {
    g: &'a Graph,
    adm: &'a [Vertex],
    max_size: usize,
    cnt: Vec<u32>,
    in_set: Vec<bool>,
    boundary: usize,
    stack: Vec<Vertex>,
    best: Option<Best>,
}

impl Walker<'_> {
    fn add(&mut self, u: Vertex) {
        if self.cnt[u] > 0 {
            self.boundary -= 1;
        }
        self.in_set[u] = true;
        for &w in self.g.neighbors(u) {
            if !self.in_set[w] && self.cnt[w] == 0 {
                self.boundary += 1;
            }
            self.cnt[w] += 1;
        }
        self.stack.push(u);
    }

    fn remove(&mut self, u: Vertex) {
        self.stack.pop();
        for &w in self.g.neighbors(u) {
            self.cnt[w] -= 1;
            if !self.in_set[w] && self.cnt[w] == 0 {
                self.boundary -= 1;
            }
        }
        self.in_set[u] = false;
        if self.cnt[u] > 0 {
            self.boundary += 1;
        }
    }

    fn record(&mut self) {
        let better = match &self.best {
            None => true,
            Some(b) => {
                let l = self.boundary as u128 * b.set.len() as u128;
                let r = b.boundary as u128 * self.stack.len() as u128;
                l < r
            }
        };
        if better {
            self.best = Some(Best {
                boundary: self.boundary,
                set: self.stack.clone(),
            });
        }
    }

    /// Depth-first preorder visits subsets in lexicographic order.
    fn descend(&mut self, next: usize) {
        self.record();
        if self.stack.len() == self.max_size {
            return;
        }
        for i in next..self.adm.len() {
            let u = self.adm[i];
            self.add(u);
            self.descend(i + 1);
            self.remove(u);
        }
    }
}

fn enumerate(g: &Graph, adm: &[Vertex], max_size: usize) -> WindowMinimum {
    let partial: Vec<Option<Best>> = (0..adm.len())
        .into_par_iter()
        .map(|i| {
            let mut w = Walker {
                g,
                adm,
                max_size,
                cnt: vec![0; g.len()],
                in_set: vec![false; g.len()],
                boundary: 0,
                stack: Vec::with_capacity(max_size),
                best: None,
            };
            w.add(adm[i]);
            w.descend(i + 1);
            w.best
        })
        .collect();
    let mut best: Option<Best> = None;
    for b in partial.into_iter().flatten() {
        if best.as_ref().is_none_or(|cur| b.improves_on(cur)) {
            best = Some(b);
        }
    }
    let b = best.expect("at least one admissible vertex");
    WindowMinimum {
        boundary: b.boundary,
        set: b.set,
        method: WindowMethod::Enumerate,
    }
}
