use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::partition::BalancedPartition;
use super::triangle::{triangle_coefficients, TriangleCoefficients};
use super::CertificateError;
use crate::graph::Graph;
use crate::spectrum::{
    laplacian, quadratic_form, ComplexVector, SpectrumResult, SPECTRUM_TOLERANCE,
};

/// Tolerance for exact identities (`sum x = 0`, `|x|^2 = n - |S|`), per vertex.
const IDENTITY_SLACK: f64 = 1e-9;

/// Additive slack for spectral inequalities: `1e-6 * n`.
pub fn inequality_slack(n: usize) -> f64 {
    1e-6 * n as f64
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Inequality {
    pub lhs: f64,
    pub rhs: f64,
    /// `lhs >= rhs - slack` is the pass condition.
    pub slack: f64,
    pub passed: bool,
}

impl Inequality {
    /// `lhs >= rhs` up to `slack`.
    pub fn at_least(lhs: f64, rhs: f64, slack: f64) -> Self {
        Self {
            lhs,
            rhs,
            slack,
            passed: lhs >= rhs - slack,
        }
    }

    pub fn margin(&self) -> f64 {
        self.lhs - self.rhs
    }
}

/// The complex test vector: `alpha_i` on `U_i`, zero on `S`.
pub fn build_test_vector(
    partition: &BalancedPartition,
) -> Result<(ComplexVector, TriangleCoefficients), CertificateError> {
    let [a, b, c] = partition.part_sizes().map(|s| s as f64);
    let coef = triangle_coefficients(a, b, c)?;
    let mut x = ComplexVector::zeros(partition.order());
    for (part, alpha) in partition.parts.iter().zip(coef.coefficients()) {
        for &v in part {
            x.0[v] = alpha;
        }
    }
    Ok((x, coef))
}

/// Everything needed to re-check the first bound's proof for one partition
/// from the numbers alone.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CertificateReport {
    pub partition: BalancedPartition,
    pub coefficients: TriangleCoefficients,
    pub x: Vec<Complex64>,
    pub sum_x: Complex64,
    pub norm_sq: f64,
    /// Edge-sum form.
    pub qform: f64,
    /// Same form by matrix multiplication.
    pub qform_matrix: f64,
    pub lambda2: f64,
    pub max_degree: usize,
    pub tau: f64,
    /// `|sum x| <= 1e-9 * n`.
    pub sum_is_zero: bool,
    /// `| |x|^2 - (n - |S|) | <= 1e-9 * n`.
    pub norm_matches: bool,
    /// `qform >= lambda2 (n - |S|)`.
    pub lower: Inequality,
    /// `max_degree |S| >= qform`.
    pub upper: Inequality,
    /// `|S| >= n lambda2 / (max_degree + lambda2)`; `None` without edges.
    pub implied: Option<Inequality>,
}

impl CertificateReport {
    pub fn passed(&self) -> bool {
        self.sum_is_zero
            && self.norm_matches
            && self.lower.passed
            && self.upper.passed
            && self.implied.is_none_or(|i| i.passed)
    }

    pub fn failures(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        if !self.sum_is_zero {
            out.push("sum_x = 0");
        }
        if !self.norm_matches {
            out.push("|x|^2 = n - |S|");
        }
        if !self.lower.passed {
            out.push("x*Lx >= lambda2 (n - |S|)");
        }
        if !self.upper.passed {
            out.push("x*Lx <= max_degree |S|");
        }
        if self.implied.is_some_and(|i| !i.passed) {
            out.push("|S| >= n lambda2 / (max_degree + lambda2)");
        }
        out
    }
}

pub fn verify_theorem1_chain(
    g: &Graph,
    spectrum: &SpectrumResult,
    partition: &BalancedPartition,
) -> Result<CertificateReport, CertificateError> {
    partition.validate(g)?;
    let n = g.n();
    let (x, coefficients) = build_test_vector(partition)?;
    let lambda2 = spectrum.lambda2().unwrap_or(0.0);
    let max_degree = g.max_degree();
    let s = partition.separator.len() as f64;
    let tau = inequality_slack(n);
    let id_slack = IDENTITY_SLACK * (n as f64).max(1.0);

    let sum_x = x.sum();
    let norm_sq = x.norm_sq();
    let qform = quadratic_form(g, &x)?;
    let qform_matrix = laplacian(g)?.hermitian_form(&x)?;
    let lower = Inequality::at_least(qform, lambda2 * (n as f64 - s), tau);
    let upper = Inequality::at_least(max_degree as f64 * s, qform, tau);
    let implied = (max_degree >= 1)
        .then(|| Inequality::at_least(s, n as f64 * lambda2 / (max_degree as f64 + lambda2), tau));

    Ok(CertificateReport {
        partition: partition.clone(),
        coefficients,
        sum_is_zero: sum_x.norm() <= id_slack,
        norm_matches: (norm_sq - (n as f64 - s)).abs() <= id_slack,
        x: x.0,
        sum_x,
        norm_sq,
        qform,
        qform_matrix,
        lambda2,
        max_degree,
        tau,
        lower,
        upper,
        implied,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GuLiuCheck {
    pub separator_size: usize,
    pub x_size: usize,
    pub y_size: usize,
    /// `|S| >= 2 lambda2 |X| / (lambda_n - lambda2)`.
    pub inequality: Inequality,
}

impl GuLiuCheck {
    pub fn passed(&self) -> bool {
        self.inequality.passed
    }

    pub fn margin(&self) -> f64 {
        self.inequality.margin()
    }
}

fn spectral_pair(g: &Graph, spectrum: &SpectrumResult) -> Result<(f64, f64), CertificateError> {
    if g.m() == 0 {
        return Err(CertificateError::NotApplicable("graph has no edges".into()));
    }
    let l2 = spectrum.lambda2().unwrap_or(0.0);
    let ln = spectrum.lambda_max().unwrap_or(0.0);
    if g.is_complete() || ln - l2 <= SPECTRUM_TOLERANCE {
        return Err(CertificateError::NotApplicable(
            "complete graph: lambda_n = lambda_2".into(),
        ));
    }
    Ok((l2, ln))
}

/// For a partition `(S, X, Y)` of `V` with `|X| <= |Y|` and no `X`-`Y`
/// edge, checks `|S| >= 2 lambda2 |X| / (lambda_n - lambda2)`. Needs a
/// non-complete graph with at least one edge.
pub fn verify_gu_liu(
    g: &Graph,
    spectrum: &SpectrumResult,
    s: &[usize],
    x: &[usize],
    y: &[usize],
) -> Result<GuLiuCheck, CertificateError> {
    let (l2, ln) = spectral_pair(g, spectrum)?;
    let n = g.n();
    let bad = |msg: String| Err(CertificateError::InvalidPartition(msg));
    let mut label = vec![u8::MAX; n];
    for (k, set) in [s, x, y].into_iter().enumerate() {
        for &v in set {
            if v >= n {
                return bad(format!("vertex {v} out of range"));
            }
            if label[v] != u8::MAX {
                return bad(format!("vertex {v} appears twice"));
            }
            label[v] = k as u8;
        }
    }
    if let Some(v) = label.iter().position(|&l| l == u8::MAX) {
        return bad(format!("vertex {v} is in none of S, X, Y"));
    }
    if x.len() > y.len() {
        return bad(format!("|X| = {} exceeds |Y| = {}", x.len(), y.len()));
    }
    if let Some(&(u, v)) = g.edges().iter().find(|&&(u, v)| label[u] + label[v] == 3) {
        return bad(format!("edge {{{u}, {v}}} joins X and Y"));
    }
    let rhs = 2.0 * l2 * x.len() as f64 / (ln - l2);
    Ok(GuLiuCheck {
        separator_size: s.len(),
        x_size: x.len(),
        y_size: y.len(),
        inequality: Inequality::at_least(s.len() as f64, rhs, inequality_slack(n)),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "branch", rename_all = "snake_case")]
pub enum Theorem2Report {
    /// `lambda2 = lambda_n = n` and the bound equals `n - 1`.
    Complete {
        lambda2: f64,
        lambda_max: f64,
        bound: f64,
        tau: f64,
        passed: bool,
    },
    General {
        lambda2: f64,
        lambda_max: f64,
        /// One check per part, `X = U_i`, `Y = V - S - U_i`.
        instances: Vec<GuLiuCheck>,
        /// `3 |S| >= 2 lambda2 (n - |S|) / (lambda_n - lambda2)`.
        summed: Inequality,
        /// `|S| >= 2 n lambda2 / (3 lambda_n - lambda2)`.
        implied: Inequality,
    },
}

impl Theorem2Report {
    pub fn passed(&self) -> bool {
        match self {
            Theorem2Report::Complete { passed, .. } => *passed,
            Theorem2Report::General {
                instances,
                summed,
                implied,
                ..
            } => instances.iter().all(GuLiuCheck::passed) && summed.passed && implied.passed,
        }
    }
}

pub fn verify_theorem2_chain(
    g: &Graph,
    spectrum: &SpectrumResult,
    partition: &BalancedPartition,
) -> Result<Theorem2Report, CertificateError> {
    partition.validate(g)?;
    if g.m() == 0 {
        return Err(CertificateError::NotApplicable("graph has no edges".into()));
    }
    let n = g.n();
    let nf = n as f64;
    let tau = inequality_slack(n);
    let l2 = spectrum.lambda2().unwrap_or(0.0);
    let ln = spectrum.lambda_max().unwrap_or(0.0);
    if g.is_complete() {
        let bound = 2.0 * nf * l2 / (3.0 * ln - l2) - 1.0;
        let passed =
            (l2 - nf).abs() <= tau && (ln - nf).abs() <= tau && (bound - (nf - 1.0)).abs() <= tau;
        return Ok(Theorem2Report::Complete {
            lambda2: l2,
            lambda_max: ln,
            bound,
            tau,
            passed,
        });
    }
    let sep = &partition.separator;
    let mut instances = Vec::with_capacity(3);
    for (i, part) in partition.parts.iter().enumerate() {
        let rest: Vec<usize> = partition
            .parts
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .flat_map(|(_, p)| p.iter().copied())
            .collect();
        instances.push(verify_gu_liu(g, spectrum, sep, part, &rest)?);
    }
    let s = sep.len() as f64;
    let summed = Inequality::at_least(3.0 * s, 2.0 * l2 * (nf - s) / (ln - l2), 3.0 * tau);
    let implied = Inequality::at_least(s, 2.0 * nf * l2 / (3.0 * ln - l2), tau);
    Ok(Theorem2Report::General {
        lambda2: l2,
        lambda_max: ln,
        instances,
        summed,
        implied,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certificates::three_partition;
    use crate::graph::Family;
    use crate::spectrum::eigenvalues;

    fn part(s: &[usize], u1: &[usize], u2: &[usize], u3: &[usize]) -> BalancedPartition {
        BalancedPartition {
            separator: s.to_vec(),
            parts: [u1.to_vec(), u2.to_vec(), u3.to_vec()],
        }
    }

    #[test]
    fn pair_cancels() {
        let (x, _) = build_test_vector(&part(&[0], &[1], &[2], &[])).unwrap();
        assert_eq!(
            x.0,
            vec![
                Complex64::new(0.0, 0.0),
                Complex64::new(1.0, 0.0),
                Complex64::new(-1.0, 0.0)
            ]
        );
    }

    #[test]
    fn empty_parts_give_zero_vector() {
        let (x, _) = build_test_vector(&part(&[0, 1, 2], &[], &[], &[])).unwrap();
        assert_eq!(x, ComplexVector::zeros(3));
    }

    #[test]
    fn equal_thirds() {
        let p = part(&[], &[0, 1, 2, 3], &[4, 5, 6, 7], &[8, 9, 10, 11]);
        let (x, _) = build_test_vector(&p).unwrap();
        assert!(x.0.iter().all(|z| (z.norm() - 1.0).abs() < 1e-12));
        assert!(x.sum().norm() < 1e-9 * 12.0);
    }

    #[test]
    fn cycle_six_chain_is_tight() {
        let c6 = Family::Cycle(6).generate().unwrap();
        let spectrum = eigenvalues(&c6).unwrap();
        let r =
            verify_theorem1_chain(&c6, &spectrum, &part(&[0, 3], &[1, 2], &[4, 5], &[])).unwrap();
        assert!((r.qform - 4.0).abs() < 1e-12);
        assert!((r.lambda2 - 1.0).abs() < 1e-10);
        assert!((r.lower.rhs - 4.0).abs() < 1e-9);
        assert_eq!(r.upper.lhs, 4.0);
        assert!(r.passed(), "{:?}", r.failures());
    }

    #[test]
    fn disconnected_graph_lower_side_is_zero() {
        let g = Family::Complete(3)
            .generate()
            .unwrap()
            .disjoint_union(&Family::Complete(3).generate().unwrap());
        let spectrum = eigenvalues(&g).unwrap();
        let p = three_partition(&g, &[]).unwrap();
        let r = verify_theorem1_chain(&g, &spectrum, &p).unwrap();
        assert_eq!(r.lower.rhs, 0.0);
        assert!(r.passed());
    }

    #[test]
    fn gu_liu_examples() {
        let p3 = Family::Path(3).generate().unwrap();
        let spectrum = eigenvalues(&p3).unwrap();
        let chk = verify_gu_liu(&p3, &spectrum, &[1], &[0], &[2]).unwrap();
        assert!((chk.inequality.rhs - 1.0).abs() < 1e-9);
        assert!(chk.passed());

        let c4 = Family::Cycle(4).generate().unwrap();
        let spectrum = eigenvalues(&c4).unwrap();
        let chk = verify_gu_liu(&c4, &spectrum, &[0, 2], &[1], &[3]).unwrap();
        assert!((chk.inequality.rhs - 2.0).abs() < 1e-9);
        assert!(chk.passed());

        let chk = verify_gu_liu(&c4, &spectrum, &[0], &[], &[1, 2, 3]).unwrap();
        assert_eq!(chk.inequality.rhs, 0.0);
    }

    #[test]
    fn gu_liu_preconditions() {
        let c4 = Family::Cycle(4).generate().unwrap();
        let spectrum = eigenvalues(&c4).unwrap();
        assert!(matches!(
            verify_gu_liu(&c4, &spectrum, &[0], &[1], &[2, 3]),
            Err(CertificateError::InvalidPartition(_))
        ));
        assert!(matches!(
            verify_gu_liu(&c4, &spectrum, &[0, 2], &[1, 3], &[]),
            Err(CertificateError::InvalidPartition(_))
        ));
        assert!(matches!(
            verify_gu_liu(&c4, &spectrum, &[0], &[1], &[3]),
            Err(CertificateError::InvalidPartition(_))
        ));
        let k4 = Family::Complete(4).generate().unwrap();
        let spectrum = eigenvalues(&k4).unwrap();
        assert!(matches!(
            verify_gu_liu(&k4, &spectrum, &[0, 1, 2], &[], &[3]),
            Err(CertificateError::NotApplicable(_))
        ));
    }

    #[test]
    fn complete_graph_branch() {
        let k5 = Family::Complete(5).generate().unwrap();
        let spectrum = eigenvalues(&k5).unwrap();
        let p = three_partition(&k5, &[0, 1, 2, 3, 4]).unwrap();
        match verify_theorem2_chain(&k5, &spectrum, &p).unwrap() {
            Theorem2Report::Complete { bound, passed, .. } => {
                assert!((bound - 4.0).abs() < 1e-9);
                assert!(passed);
            }
            other => panic!("expected complete branch, got {other:?}"),
        }
    }

    #[test]
    fn empty_parts_contribute_nothing() {
        let c6 = Family::Cycle(6).generate().unwrap();
        let spectrum = eigenvalues(&c6).unwrap();
        let r =
            verify_theorem2_chain(&c6, &spectrum, &part(&[0, 3], &[1, 2], &[4, 5], &[])).unwrap();
        let Theorem2Report::General { instances, .. } = &r else {
            panic!()
        };
        assert_eq!(instances[2].inequality.rhs, 0.0);
        assert!(r.passed());
    }
}
