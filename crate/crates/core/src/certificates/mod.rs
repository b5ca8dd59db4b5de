//! Constructive replay of the two spectral lower-bound arguments.
//!
//! Starting from a tree decomposition, [`balanced_separator`] finds a set
//! `S` inside one bag whose removal leaves only small components, [`three_partition`]
//! groups those components into `U1, U2, U3`, and [`build_test_vector`]
//! puts unit complex weights on the groups so that they cancel. The
//! verifiers then evaluate every inequality of both chains numerically:
//!
//! * first bound: `lambda2 (n - |S|) <= x*Lx <= max_degree |S|`;
//! * second bound: `|S| >= 2 lambda2 |U_i| / (lambda_n - lambda2)` for each
//!   part, summed over the three parts.
//!
//! The separator always lies inside a bag, so a decomposition of width `w`
//! gives `|S| <= w + 1`.

mod chain;
mod partition;
mod triangle;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exact::{exact_tw, ExactError};
use crate::graph::Graph;
use crate::spectrum::{eigenvalues, SpectrumError, SpectrumResult};

pub use chain::{
    build_test_vector, inequality_slack, verify_gu_liu, verify_theorem1_chain,
    verify_theorem2_chain, CertificateReport, GuLiuCheck, Inequality, Theorem2Report,
};
pub use partition::{
    balanced_separator, exhaustive_bins, greedy_bins, three_partition, BalancedPartition,
};
pub use triangle::{triangle_coefficients, TriangleCoefficients};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CertificateError {
    #[error("invalid tree decomposition: {0}")]
    InvalidDecomposition(String),
    #[error("no bag contains a balanced separator")]
    NoBalancedSeparator,
    #[error("component of {size} vertices exceeds half of the {remaining} non-separator vertices")]
    OversizedComponent { size: usize, remaining: usize },
    #[error("no balanced three-way assignment of components exists")]
    NoBalancedAssignment,
    #[error("no unit coefficients for sides ({a}, {b}, {c}): largest side exceeds half the sum")]
    Infeasible { a: f64, b: f64, c: f64 },
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error(transparent)]
    Spectrum(#[from] SpectrumError),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

/// Full certificate for one graph, built from an optimal decomposition.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub n: usize,
    pub m: usize,
    pub treewidth: usize,
    pub separator_size: usize,
    pub spectrum: SpectrumResult,
    pub theorem1: CertificateReport,
    /// `None` when the graph has no edges.
    pub theorem2: Option<Theorem2Report>,
}

impl Certificate {
    pub fn passed(&self) -> bool {
        self.theorem1.passed() && self.theorem2.as_ref().is_none_or(Theorem2Report::passed)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("certificate fields serialize")
    }

    /// Names of the failed checks, empty when everything passed.
    pub fn failures(&self) -> Vec<String> {
        let mut out: Vec<String> = self
            .theorem1
            .failures()
            .into_iter()
            .map(|f| format!("theorem1: {f}"))
            .collect();
        match &self.theorem2 {
            Some(Theorem2Report::Complete { passed: false, .. }) => {
                out.push("theorem2: complete-graph bound = n - 1".into())
            }
            Some(Theorem2Report::General {
                instances,
                summed,
                implied,
                ..
            }) => {
                for (i, c) in instances.iter().enumerate() {
                    if !c.passed() {
                        out.push(format!(
                            "theorem2: |S| >= 2 lambda2 |U{}| / (lambda_n - lambda2)",
                            i + 1
                        ));
                    }
                }
                if !summed.passed {
                    out.push("theorem2: summed inequality".into());
                }
                if !implied.passed {
                    out.push("theorem2: |S| >= 2 n lambda2 / (3 lambda_n - lambda2)".into());
                }
            }
            _ => {}
        }
        out
    }
}

/// exact decomposition -> separator -> partition -> test vector -> chains.
pub fn certify(g: &Graph, limit: usize) -> Result<Certificate, CertificateError> {
    let exact = exact_tw(g, limit)?;
    let spectrum = eigenvalues(g)?;
    let separator = balanced_separator(g, &exact.decomposition)?;
    let partition = three_partition(g, &separator)?;
    let theorem1 = verify_theorem1_chain(g, &spectrum, &partition)?;
    let theorem2 = match verify_theorem2_chain(g, &spectrum, &partition) {
        Ok(r) => Some(r),
        Err(CertificateError::NotApplicable(_)) => None,
        Err(e) => return Err(e),
    };
    Ok(Certificate {
        n: g.n(),
        m: g.m(),
        treewidth: exact.width,
        separator_size: separator.len(),
        spectrum,
        theorem1,
        theorem2,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Family;

    #[test]
    fn complete_bipartite_certificate() {
        let g = Family::CompleteBipartite(3, 5).generate().unwrap();
        let c = certify(&g, 20).unwrap();
        assert!(c.passed(), "{:?}", c.failures());
        assert_eq!(c.treewidth, 3);
        let implied = c.theorem1.implied.unwrap();
        assert!((implied.rhs - 3.0).abs() < 1e-9);
        assert!(c.separator_size >= 3);
    }

    #[test]
    fn complete_graph_certificate_uses_complete_branch() {
        let c = certify(&Family::Complete(5).generate().unwrap(), 20).unwrap();
        assert!(matches!(c.theorem2, Some(Theorem2Report::Complete { .. })));
        assert!(c.passed());
    }

    #[test]
    fn path_certificate() {
        let c = certify(&Family::Path(6).generate().unwrap(), 20).unwrap();
        assert!(c.passed());
        assert!(c.theorem1.implied.unwrap().rhs - 1.0 <= 1.0);
    }

    #[test]
    fn edgeless_certificate_has_no_second_chain() {
        let c = certify(&Graph::edgeless(3), 20).unwrap();
        assert!(c.theorem2.is_none());
        assert!(c.theorem1.implied.is_none());
        assert!(c.passed());
    }

    #[test]
    fn certificate_serializes() {
        let c = certify(&Family::Cycle(5).generate().unwrap(), 20).unwrap();
        let json = serde_json::to_value(&c).unwrap();
        assert_eq!(json["theorem2"]["branch"], "general");
        assert!(json["theorem1"]["x"].as_array().unwrap().len() == 5);
    }
}
