use serde_json::{json, Value};

use super::analysis::{complete_mask, essential_boundary_in, pseudo_regularity_index};
use super::tree::RootedTree;
use crate::error::{Error, Result};
use crate::graphcore::{admissible_mask, boundary, connected_subsets, Vertex};
use crate::rational::{ratio, Rational};

/// Result of checking one lemma inequality over all enumerated sets.
#[derive(Clone, Debug, PartialEq)]
pub struct LemmaOutcome {
    pub name: &'static str,
    /// `false` when the tree does not satisfy the lemma's hypotheses.
    pub applicable: bool,
    pub holds: bool,
    /// Smallest value of the checked ratio (for l4 the ratio
    /// `(1 + (K−1)|∂_e A|)/|A|`, which must be `≥ 1`).
    pub min_ratio: Option<Rational>,
    pub argmin: Option<Vec<Vertex>>,
    pub counterexample: Option<Vec<Vertex>>,
}

impl LemmaOutcome {
    fn new(name: &'static str, applicable: bool) -> Self {
        LemmaOutcome {
            name,
            applicable,
            holds: true,
            min_ratio: None,
            argmin: None,
            counterexample: None,
        }
    }

    fn observe(&mut self, value: Rational, threshold: &Rational, set: &[Vertex]) {
        if !self.applicable {
            return;
        }
        if self.min_ratio.as_ref().is_none_or(|m| value < *m) {
            self.min_ratio = Some(value.clone());
            self.argmin = Some(set.to_vec());
        }
        if value < *threshold && self.counterexample.is_none() {
            self.holds = false;
            let mut s = set.to_vec();
            s.sort_unstable();
            self.counterexample = Some(s);
        }
    }

    pub fn to_json(&self, t: &RootedTree) -> Value {
        let labels = |s: &Vec<Vertex>| s.iter().map(|&v| t.label(v).to_string()).collect::<Vec<_>>();
        json!({
            "name": self.name,
            "applicable": self.applicable,
            "holds": self.holds,
            "min_ratio": self.min_ratio.as_ref().map(|r| r.to_string()),
            "argmin": self.argmin.as_ref().map(labels),
            "counterexample": self.counterexample.as_ref().map(labels),
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct LemmaReport {
    pub sets_checked: u128,
    pub max_size: usize,
    /// `|∂A|/|A| ≥ 1/3`.
    pub l1: LemmaOutcome,
    /// `|∂_e A|/|A| ≥ 1/3`.
    pub l2_essential: LemmaOutcome,
    /// `|∂_e¹ A|/|A| ≥ 1/6`.
    pub l2_inner: LemmaOutcome,
    /// `|A| ≤ 1 + (K−1)|∂_e A| ≤ K|∂_e A|` with `K = 1 + max depth of A`.
    pub l4: LemmaOutcome,
}

impl LemmaReport {
    pub fn all_hold(&self) -> bool {
        [&self.l1, &self.l2_essential, &self.l2_inner, &self.l4].iter().all(|l| l.holds)
    }

    pub fn to_json(&self, t: &RootedTree) -> Value {
        json!({
            "sets_checked": self.sets_checked.to_string(),
            "max_size": self.max_size,
            "l1": self.l1.to_json(t),
            "l2_essential": self.l2_essential.to_json(t),
            "l2_inner": self.l2_inner.to_json(t),
            "l4": self.l4.to_json(t),
        })
    }
}

/// Exhaustively tests the per-set tree lemmas over all connected admissible
/// window sets of size `≤ max_size`.
///
/// l1 and l2 need a geodesically complete 1-pseudo-regular tree; l4 needs a
/// geodesically complete tree. Lemmas whose hypotheses fail are reported as
/// not applicable.
pub fn lemma_suite(t: &RootedTree, max_size: usize, budget: u128) -> Result<LemmaReport> {
    let complete = complete_mask(t).iter().all(|&x| x);
    let one_regular = complete && pseudo_regularity_index(t)?.k == Some(1);
    let g = t.to_graph();
    let mask = admissible_mask(&g);
    let mut l1 = LemmaOutcome::new("l1", one_regular);
    let mut l2e = LemmaOutcome::new("l2_essential", one_regular);
    let mut l2i = LemmaOutcome::new("l2_inner", one_regular);
    let mut l4 = LemmaOutcome::new("l4", complete);
    let third = ratio(1, 3);
    let sixth = ratio(1, 6);
    let one = ratio(1, 1);
    let mut failure: Option<Error> = None;
    let count = connected_subsets(&g, &mask, max_size, budget, |a| {
        if failure.is_some() {
            return;
        }
        let n = a.len() as i64;
        let bd = match boundary(&g, a) {
            Ok(b) => b,
            Err(e) => {
                failure = Some(e);
                return;
            }
        };
        let eb = match essential_boundary_in(t, &g, a) {
            Ok(e) => e,
            Err(e) => {
                failure = Some(e);
                return;
            }
        };
        l1.observe(ratio(bd.len() as i64, n), &third, a);
        l2e.observe(ratio(eb.essential.len() as i64, n), &third, a);
        l2i.observe(ratio(eb.essential_inner.len() as i64, n), &sixth, a);
        let k = 1 + a.iter().map(|&v| t.depth(v)).max().unwrap() as i64;
        let e = eb.essential.len() as i64;
        let first = 1 + (k - 1) * e;
        l4.observe(ratio(first, n), &one, a);
        if first > k * e {
            l4.holds = false;
            l4.counterexample.get_or_insert_with(|| a.to_vec());
        }
    })?;
    if let Some(e) = failure {
        return Err(e);
    }
    Ok(LemmaReport {
        sets_checked: count,
        max_size,
        l1,
        l2_essential: l2e,
        l2_inner: l2i,
        l4,
    })
}
