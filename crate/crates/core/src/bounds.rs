//! Spectral treewidth lower bounds and the per-graph comparison report.
//!
//! Four bounds are evaluated from `(n, max degree, lambda_2, lambda_n)`:
//!
//! | key       | bound                                              |
//! |-----------|----------------------------------------------------|
//! | `cs03`    | `3 n l2 / (4 D + 8 l2) - 1`                        |
//! | `ghnoo24` | `3 n l2 / max(4 D + 3 l2, 3 D + 4.5 l2) - 1`       |
//! | `thm1`    | `n l2 / (D + l2) - 1`                              |
//! | `thm2`    | `2 n l2 / (3 ln - l2) - 1`                         |
//!
//! `ghnoo24` takes the larger of its two denominators as published, which
//! is the weaker of the two candidates. All four need at least one edge; an
//! edgeless graph gets `None` for each.

use serde::{Deserialize, Serialize};

use crate::graph::Graph;
use crate::spectrum::{eigenvalues, SpectrumError, SpectrumResult};

/// Slack subtracted before rounding a real bound up to an integer.
pub const INTEGER_SLACK: f64 = 1e-6;

pub fn bound_cs03(n: usize, max_degree: f64, lambda2: f64) -> Option<f64> {
    (max_degree >= 1.0).then(|| 3.0 * n as f64 * lambda2 / (4.0 * max_degree + 8.0 * lambda2) - 1.0)
}

pub fn bound_ghnoo24(n: usize, max_degree: f64, lambda2: f64) -> Option<f64> {
    (max_degree >= 1.0).then(|| {
        let denom = f64::max(
            4.0 * max_degree + 3.0 * lambda2,
            3.0 * max_degree + 4.5 * lambda2,
        );
        3.0 * n as f64 * lambda2 / denom - 1.0
    })
}

pub fn bound_thm1(n: usize, max_degree: f64, lambda2: f64) -> Option<f64> {
    (max_degree >= 1.0).then(|| n as f64 * lambda2 / (max_degree + lambda2) - 1.0)
}

/// Needs `lambda_max > 0`, which holds exactly when the graph has an edge.
pub fn bound_thm2(n: usize, lambda2: f64, lambda_max: f64) -> Option<f64> {
    (lambda_max > 0.0).then(|| 2.0 * n as f64 * lambda2 / (3.0 * lambda_max - lambda2) - 1.0)
}

/// `max(0, ceil(b - INTEGER_SLACK))`.
pub fn integerize(bound: f64) -> u64 {
    let v = (bound - INTEGER_SLACK).ceil();
    if v <= 0.0 {
        0
    } else {
        v as u64
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundInputs {
    pub n: usize,
    pub m: usize,
    pub max_degree: usize,
    pub lambda2: f64,
    pub lambda_max: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundValues {
    pub cs03: Option<f64>,
    pub ghnoo24: Option<f64>,
    pub thm1: Option<f64>,
    pub thm2: Option<f64>,
}

impl BoundValues {
    pub fn evaluate(inputs: &BoundInputs) -> Self {
        let (n, d, l2, ln) = (
            inputs.n,
            inputs.max_degree as f64,
            inputs.lambda2,
            inputs.lambda_max,
        );
        if inputs.m == 0 {
            return Self {
                cs03: None,
                ghnoo24: None,
                thm1: None,
                thm2: None,
            };
        }
        Self {
            cs03: bound_cs03(n, d, l2),
            ghnoo24: bound_ghnoo24(n, d, l2),
            thm1: bound_thm1(n, d, l2),
            thm2: bound_thm2(n, l2, ln),
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (&'static str, Option<f64>)> {
        [
            ("cs03", self.cs03),
            ("ghnoo24", self.ghnoo24),
            ("thm1", self.thm1),
            ("thm2", self.thm2),
        ]
        .into_iter()
    }

    /// Name and value of the largest applicable bound; earliest key wins ties.
    pub fn best(&self) -> Option<(&'static str, f64)> {
        self.iter()
            .filter_map(|(k, v)| v.map(|v| (k, v)))
            .fold(None, |acc, (k, v)| match acc {
                Some((_, bv)) if bv >= v => acc,
                _ => Some((k, v)),
            })
    }

    pub fn best_integer(&self) -> u64 {
        self.iter()
            .filter_map(|(_, v)| v)
            .map(integerize)
            .max()
            .unwrap_or(0)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub inputs: BoundInputs,
    pub bounds: BoundValues,
    pub best_integer: u64,
}

impl BoundReport {
    pub fn from_inputs(inputs: BoundInputs) -> Self {
        let bounds = BoundValues::evaluate(&inputs);
        Self {
            inputs,
            bounds,
            best_integer: bounds.best_integer(),
        }
    }

    pub fn from_spectrum(g: &Graph, spectrum: &SpectrumResult) -> Self {
        Self::from_inputs(BoundInputs {
            n: g.n(),
            m: g.m(),
            max_degree: g.max_degree(),
            // a single vertex has no lambda_2; it has no edges either, so no bound uses it
            lambda2: spectrum.lambda2().unwrap_or(0.0),
            lambda_max: spectrum.lambda_max().unwrap_or(0.0),
        })
    }

    /// JSON schema consumed by external tooling; `null` marks a bound that
    /// does not apply.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "graph": {
                "n": self.inputs.n,
                "m": self.inputs.m,
                "max_degree": self.inputs.max_degree,
            },
            "spectrum": {
                "lambda2": self.inputs.lambda2,
                "lambda_max": self.inputs.lambda_max,
            },
            "bounds": {
                "cs03": self.bounds.cs03,
                "ghnoo24": self.bounds.ghnoo24,
                "thm1": self.bounds.thm1,
                "thm2": self.bounds.thm2,
            },
            "best_integer_lower_bound": self.best_integer,
        })
    }
}

/// Computes the spectrum once and evaluates every bound.
pub fn bounds_report(g: &Graph) -> Result<BoundReport, SpectrumError> {
    let spectrum = eigenvalues(g)?;
    Ok(BoundReport::from_spectrum(g, &spectrum))
}
