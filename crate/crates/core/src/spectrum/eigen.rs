//! Dense symmetric eigenvalues: Householder reduction to tridiagonal form
//! followed by implicit-shift QL iterations. Eigenvalues only.

/// Iteration cap per eigenvalue in the QL sweep.
const MAX_QL_ITERATIONS: usize = 60;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NoConvergence {
    pub index: usize,
}

/// Returns the eigenvalues of the symmetric `n x n` row-major matrix `a`,
/// in the order the QL iteration leaves them (unsorted).
pub fn symmetric_eigenvalues(mut a: Vec<f64>, n: usize) -> Result<Vec<f64>, NoConvergence> {
    assert_eq!(a.len(), n * n, "matrix must be n x n");
    let (mut diag, mut off) = tridiagonalize(&mut a, n);
    tridiagonal_ql(&mut diag, &mut off)?;
    Ok(diag)
}

/// Householder reduction. Returns `(d, e)` where `d` is the diagonal and
/// `e[k]` couples rows `k` and `k + 1` (`e[n - 1] = 0`).
fn tridiagonalize(a: &mut [f64], n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut d = vec![0.0; n];
    let mut e = vec![0.0; n];
    if n == 0 {
        return (d, e);
    }
    let idx = |i: usize, j: usize| i * n + j;
    let mut v = vec![0.0; n];
    let mut p = vec![0.0; n];
    for k in 0..n.saturating_sub(2) {
        d[k] = a[idx(k, k)];
        let tail = k + 1..n;
        let norm = tail
            .clone()
            .map(|i| a[idx(i, k)].powi(2))
            .sum::<f64>()
            .sqrt();
        if norm == 0.0 {
            e[k] = 0.0;
            continue;
        }
        let x0 = a[idx(k + 1, k)];
        let alpha = if x0 >= 0.0 { -norm } else { norm };
        for i in tail.clone() {
            v[i] = a[idx(i, k)];
        }
        v[k + 1] -= alpha;
        let vnorm = tail.clone().map(|i| v[i] * v[i]).sum::<f64>().sqrt();
        for i in tail.clone() {
            v[i] /= vnorm;
        }
        // p = A22 v, q = p - (v.p) v, A22 -= 2 (v q^T + q v^T)
        for i in tail.clone() {
            p[i] = tail.clone().map(|j| a[idx(i, j)] * v[j]).sum();
        }
        let vp: f64 = tail.clone().map(|i| v[i] * p[i]).sum();
        for i in tail.clone() {
            p[i] -= vp * v[i];
        }
        for i in tail.clone() {
            for j in tail.clone() {
                a[idx(i, j)] -= 2.0 * (v[i] * p[j] + p[i] * v[j]);
            }
        }
        e[k] = alpha;
    }
    if n >= 2 {
        d[n - 2] = a[idx(n - 2, n - 2)];
        e[n - 2] = a[idx(n - 1, n - 2)];
    }
    d[n - 1] = a[idx(n - 1, n - 1)];
    e[n - 1] = 0.0;
    (d, e)
}

fn tridiagonal_ql(d: &mut [f64], e: &mut [f64]) -> Result<(), NoConvergence> {
    let n = d.len();
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            if iter == MAX_QL_ITERATIONS {
                return Err(NoConvergence { index: l });
            }
            iter += 1;
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut deflated = false;
            for i in (l..m).rev() {
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    deflated = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
            }
            if deflated {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sorted(mut v: Vec<f64>) -> Vec<f64> {
        v.sort_by(f64::total_cmp);
        v
    }

    #[test]
    fn diagonal_matrix() {
        let a = vec![3.0, 0.0, 0.0, 0.0, -1.0, 0.0, 0.0, 0.0, 2.0];
        assert_eq!(
            sorted(symmetric_eigenvalues(a, 3).unwrap()),
            vec![-1.0, 2.0, 3.0]
        );
    }

    #[test]
    fn two_by_two() {
        // [[2, 1], [1, 2]] has eigenvalues 1 and 3.
        let ev = sorted(symmetric_eigenvalues(vec![2.0, 1.0, 1.0, 2.0], 2).unwrap());
        assert!((ev[0] - 1.0).abs() < 1e-14 && (ev[1] - 3.0).abs() < 1e-14);
    }

    #[test]
    fn trivial_sizes() {
        assert!(symmetric_eigenvalues(vec![], 0).unwrap().is_empty());
        assert_eq!(symmetric_eigenvalues(vec![7.5], 1).unwrap(), vec![7.5]);
    }

    #[test]
    fn hilbert_like_trace_and_frobenius() {
        let n = 7;
        let a: Vec<f64> = (0..n * n)
            .map(|k| 1.0 / ((k / n + k % n + 1) as f64))
            .collect();
        let ev = symmetric_eigenvalues(a.clone(), n).unwrap();
        let trace: f64 = (0..n).map(|i| a[i * n + i]).sum();
        let frob: f64 = a.iter().map(|x| x * x).sum();
        assert!((ev.iter().sum::<f64>() - trace).abs() < 1e-12);
        assert!((ev.iter().map(|x| x * x).sum::<f64>() - frob).abs() < 1e-12);
    }
}
