use serde_json::{json, Value};

use super::calculus::VertexFunction;
use super::window::{admissible_mask, cheeger_ratio, WindowMethod};
use super::graph::{Graph, Vertex};
use crate::error::{Error, Result};
use crate::rational::{self, Rational};

/// Where an endpoint of a [`CheegerBound`] comes from, with the data needed
/// to re-verify it.
#[derive(Clone, Debug, PartialEq)]
pub enum Provenance {
    /// `h ≥ 0` holds for every graph.
    Trivial,
    /// Exact search over admissible window subsets; the set attains the upper endpoint.
    BruteForceWindow {
        set: Vec<Vertex>,
        boundary: usize,
        max_size: usize,
        method: WindowMethod,
    },
    /// Function certificate `h ≥ c₂/(μ c₁)`.
    Certificate {
        f: VertexFunction,
        c1: Rational,
        c2: Rational,
        mu: usize,
    },
    /// Level function of a hyperbolic approximation: `Δf ≥ c₂` on the
    /// levels strictly between the base and the top, `|∇f| ≤ c₁`.
    LevelCertificate {
        c1: Rational,
        c2: Rational,
        mu: usize,
        k0: i32,
        k_max: i32,
    },
    /// Tree theorem with pseudo-regularity `k` and complementedness `c`.
    TreeTheorem { k: u32, c: usize, horizon: u32 },
    /// Decomposition theorem with parameters (μ, R, r).
    DecompositionTheorem {
        mu: usize,
        big_r: usize,
        r: Rational,
        strong: bool,
    },
}

impl Provenance {
    pub fn tag(&self) -> &'static str {
        match self {
            Provenance::Trivial => "trivial",
            Provenance::BruteForceWindow { .. } => "brute-force-window",
            Provenance::Certificate { .. } => "certificate",
            Provenance::LevelCertificate { .. } => "level-certificate",
            Provenance::TreeTheorem { .. } => "tree-theorem",
            Provenance::DecompositionTheorem { .. } => "decomposition-theorem",
        }
    }

    pub fn to_json(&self, g: Option<&Graph>) -> Value {
        // labels when the graph is known, sorted so the output does not depend on vertex order
        let set_json = |set: &[Vertex]| match g {
            Some(g) => {
                let mut ls = g.set_labels(set);
                ls.sort();
                Value::from(ls)
            }
            None => Value::from(set.to_vec()),
        };
        match self {
            Provenance::Trivial => json!({"kind": self.tag()}),
            Provenance::BruteForceWindow { set, boundary, max_size, method } => json!({
                "kind": self.tag(),
                "set": set_json(set),
                "boundary_size": boundary,
                "max_size": max_size,
                "method": method.name(),
            }),
            Provenance::Certificate { f, c1, c2, mu } => json!({
                "kind": self.tag(),
                "c1": c1.to_string(),
                "c2": c2.to_string(),
                "mu": mu,
                "f": g.map_or_else(
                    || Value::from(f.values().iter().map(|x| x.to_string()).collect::<Vec<_>>()),
                    |g| f.to_json(g),
                ),
            }),
            Provenance::LevelCertificate { c1, c2, mu, k0, k_max } => json!({
                "kind": self.tag(),
                "c1": c1.to_string(),
                "c2": c2.to_string(),
                "mu": mu,
                "k0": k0,
                "k_max": k_max,
            }),
            Provenance::TreeTheorem { k, c, horizon } => json!({
                "kind": self.tag(), "k": k, "c": c, "horizon": horizon,
            }),
            Provenance::DecompositionTheorem { mu, big_r, r, strong } => json!({
                "kind": self.tag(), "mu": mu, "R": big_r, "r": r.to_string(), "strong": strong,
            }),
        }
    }
}

/// Certified interval `[lower, upper]` for a Cheeger constant.
#[derive(Clone, Debug, PartialEq)]
pub struct CheegerBound {
    pub lower: Rational,
    /// `None` means `+∞`.
    pub upper: Option<Rational>,
    pub lower_witness: Provenance,
    pub upper_witness: Option<Provenance>,
    /// The lower endpoint holds for the ambient infinite graph whose
    /// truncation was analysed, not for the finite window itself.
    pub horizon_certified: bool,
    /// Plain description of what was checked.
    pub verified_region: Option<String>,
}

impl CheegerBound {
    pub fn trivial() -> Self {
        CheegerBound {
            lower: rational::zero(),
            upper: None,
            lower_witness: Provenance::Trivial,
            upper_witness: None,
            horizon_certified: false,
            verified_region: None,
        }
    }

    pub fn lower_only(lower: Rational, witness: Provenance, horizon_certified: bool) -> Self {
        CheegerBound {
            lower,
            lower_witness: witness,
            horizon_certified,
            ..Self::trivial()
        }
    }

    pub fn upper_only(upper: Rational, witness: Provenance) -> Self {
        CheegerBound {
            upper: Some(upper),
            upper_witness: Some(witness),
            ..Self::trivial()
        }
    }

    pub fn with_region(mut self, region: impl Into<String>) -> Self {
        self.verified_region = Some(region.into());
        self
    }

    /// Intersection of two intervals. An empty intersection means one of the
    /// witnesses is wrong and is reported as a falsified invariant.
    pub fn meet(self, other: CheegerBound) -> Result<CheegerBound> {
        let (lower, lower_witness, horizon_certified) = if other.lower > self.lower {
            (other.lower, other.lower_witness, other.horizon_certified)
        } else {
            (self.lower, self.lower_witness, self.horizon_certified)
        };
        let (upper, upper_witness) = match (self.upper, other.upper) {
            (Some(a), Some(b)) if b < a => (Some(b), other.upper_witness),
            (Some(a), _) => (Some(a), self.upper_witness),
            (None, b) => (b, other.upper_witness),
        };
        let region = match (self.verified_region, other.verified_region) {
            (Some(a), Some(b)) => Some(format!("{a}; {b}")),
            (a, b) => a.or(b),
        };
        let out = CheegerBound {
            lower,
            upper,
            lower_witness,
            upper_witness,
            horizon_certified,
            verified_region: region,
        };
        if let Some(u) = &out.upper {
            if out.lower > *u {
                return Err(Error::Falsified(format!("lower {} exceeds upper {}", out.lower, u)));
            }
        }
        Ok(out)
    }

    /// Re-verifies every witness that lives on `g` (window sets and function
    /// certificates). Tree and decomposition witnesses are checked by their
    /// own modules.
    pub fn verify(&self, g: &Graph) -> Result<()> {
        if let Some(u) = &self.upper {
            if self.lower > *u {
                return Err(Error::Falsified("lower exceeds upper".into()));
            }
        }
        if let Some(Provenance::BruteForceWindow { set, boundary, .. }) = &self.upper_witness {
            let mask = admissible_mask(g);
            if let Some(&v) = set.iter().find(|&&v| !mask[v]) {
                return Err(Error::Falsified(format!("witness vertex {} is not admissible", g.label(v))));
            }
            let r = cheeger_ratio(g, set)?;
            if Some(&r) != self.upper.as_ref() || r != rational::ratio(*boundary as i64, set.len() as i64) {
                return Err(Error::Falsified(format!("window witness ratio {r} does not match")));
            }
        }
        if let Provenance::Certificate { f, c1, c2, mu } = &self.lower_witness {
            let again = super::calculus::certificate_constants(g, f)?;
            if &again.c1 != c1 || &again.c2 != c2 || *mu != g.max_degree() {
                return Err(Error::Falsified("certificate constants do not recompute".into()));
            }
            let expect = c2.clone() / (c1.clone() * rational::int(*mu as i64));
            if expect != self.lower {
                return Err(Error::Falsified("certificate bound does not recompute".into()));
            }
        }
        Ok(())
    }

    pub fn to_json(&self, g: Option<&Graph>) -> Value {
        json!({
            "lower": self.lower.to_string(),
            "upper": self.upper.as_ref().map(|u| u.to_string()),
            "lower_provenance": self.lower_witness.to_json(g),
            "upper_provenance": self.upper_witness.as_ref().map(|p| p.to_json(g)),
            "horizon_certified": self.horizon_certified,
            "verified_region": self.verified_region,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    #[test]
    fn meet_takes_tightest() {
        let a = CheegerBound::lower_only(ratio(1, 9), Provenance::Trivial, true);
        let b = CheegerBound::upper_only(ratio(1, 2), Provenance::Trivial);
        let m = a.meet(b).unwrap();
        assert_eq!(m.lower, ratio(1, 9));
        assert_eq!(m.upper, Some(ratio(1, 2)));
        let bad = CheegerBound::upper_only(ratio(1, 10), Provenance::Trivial);
        assert!(matches!(m.meet(bad), Err(Error::Falsified(_))));
    }
}
