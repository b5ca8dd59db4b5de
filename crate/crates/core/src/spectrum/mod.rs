//! Laplacian matrix, its spectrum, and the Laplacian quadratic form over
//! complex vectors.

mod eigen;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::Graph;

pub use eigen::symmetric_eigenvalues;

/// Reported accuracy of every eigenvalue.
pub const SPECTRUM_TOLERANCE: f64 = 1e-8;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SpectrumError {
    #[error("graph has {n} vertices; at least {needed} required")]
    TooSmall { n: usize, needed: usize },
    #[error("eigensolver failed to converge at index {0}")]
    NoConvergence(usize),
    #[error("vector has {got} entries, graph has {expected} vertices")]
    DimensionMismatch { expected: usize, got: usize },
}

/// Dense Laplacian `L = D - A`, row-major. All entries are integers.
#[derive(Debug, Clone, PartialEq)]
pub struct LaplacianMatrix {
    order: usize,
    entries: Vec<f64>,
}

impl LaplacianMatrix {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, u: usize, v: usize) -> f64 {
        self.entries[u * self.order + v]
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    /// `x* L x` evaluated by matrix-vector multiplication.
    pub fn hermitian_form(&self, x: &ComplexVector) -> Result<f64, SpectrumError> {
        check_len(self.order, x)?;
        let n = self.order;
        let mut acc = Complex64::new(0.0, 0.0);
        for u in 0..n {
            let row: Complex64 = (0..n).map(|v| x.0[v] * self.get(u, v)).sum();
            acc += x.0[u].conj() * row;
        }
        Ok(acc.re)
    }
}

/// A vector in `C^V`, one entry per vertex.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexVector(pub Vec<Complex64>);

impl ComplexVector {
    pub fn zeros(n: usize) -> Self {
        Self(vec![Complex64::new(0.0, 0.0); n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn sum(&self) -> Complex64 {
        self.0.iter().sum()
    }

    pub fn norm_sq(&self) -> f64 {
        self.0.iter().map(Complex64::norm_sqr).sum()
    }
}

impl From<Vec<Complex64>> for ComplexVector {
    fn from(v: Vec<Complex64>) -> Self {
        Self(v)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumResult {
    /// `lambda_1 <= ... <= lambda_n`.
    pub eigenvalues: Vec<f64>,
    pub tolerance: f64,
    /// Values with modulus at or below this are reported as exactly zero.
    pub zero_threshold: f64,
    pub zero_multiplicity: usize,
}

impl SpectrumResult {
    pub fn lambda2(&self) -> Option<f64> {
        self.eigenvalues.get(1).copied()
    }

    pub fn lambda_max(&self) -> Option<f64> {
        self.eigenvalues.last().copied()
    }
}

pub fn zero_threshold(m: usize) -> f64 {
    1e-8 * f64::max(1.0, 2.0 * m as f64)
}

pub fn laplacian(g: &Graph) -> Result<LaplacianMatrix, SpectrumError> {
    let n = g.n();
    if n == 0 {
        return Err(SpectrumError::TooSmall { n, needed: 1 });
    }
    let mut entries = vec![0.0; n * n];
    for v in 0..n {
        entries[v * n + v] = g.degree(v) as f64;
    }
    for &(u, v) in g.edges() {
        entries[u * n + v] = -1.0;
        entries[v * n + u] = -1.0;
    }
    Ok(LaplacianMatrix { order: n, entries })
}

/// Full Laplacian spectrum in non-decreasing order. Eigenvalues within the
/// zero threshold are snapped to `0.0`.
pub fn eigenvalues(g: &Graph) -> Result<SpectrumResult, SpectrumError> {
    let lap = laplacian(g)?;
    let n = lap.order;
    let mut ev =
        symmetric_eigenvalues(lap.entries, n).map_err(|e| SpectrumError::NoConvergence(e.index))?;
    let threshold = zero_threshold(g.m());
    for x in &mut ev {
        if x.abs() <= threshold {
            *x = 0.0;
        }
    }
    // stable: ties keep solver order
    ev.sort_by(f64::total_cmp);
    let zero_multiplicity = ev.iter().filter(|&&x| x == 0.0).count();
    Ok(SpectrumResult {
        eigenvalues: ev,
        tolerance: SPECTRUM_TOLERANCE,
        zero_threshold: threshold,
        zero_multiplicity,
    })
}

/// Algebraic connectivity. Exactly `0.0` for disconnected graphs.
pub fn lambda2(g: &Graph) -> Result<f64, SpectrumError> {
    if g.n() < 2 {
        return Err(SpectrumError::TooSmall {
            n: g.n(),
            needed: 2,
        });
    }
    Ok(eigenvalues(g)?.eigenvalues[1])
}

pub fn lambda_max(g: &Graph) -> Result<f64, SpectrumError> {
    Ok(*eigenvalues(g)?.eigenvalues.last().expect("n >= 1"))
}

/// `x* L x` as the edge sum `sum over {u,v} in E of |x(u) - x(v)|^2`.
pub fn quadratic_form(g: &Graph, x: &ComplexVector) -> Result<f64, SpectrumError> {
    check_len(g.n(), x)?;
    Ok(g.edges()
        .iter()
        .map(|&(u, v)| (x.0[u] - x.0[v]).norm_sqr())
        .sum())
}

fn check_len(expected: usize, x: &ComplexVector) -> Result<(), SpectrumError> {
    if x.len() != expected {
        return Err(SpectrumError::DimensionMismatch {
            expected,
            got: x.len(),
        });
    }
    Ok(())
}
