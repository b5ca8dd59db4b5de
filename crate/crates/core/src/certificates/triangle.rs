//! Unit complex coefficients `alpha, beta, gamma` with
//! `a alpha + b beta + c gamma = 0`, for side lengths satisfying
//! `max(a, b, c) <= (a + b + c) / 2`.
//!
//! With `c` the largest side, `a + b = c` gives `(1, 1, -1)`. Otherwise the
//! triangle with `BC = a`, `CA = b`, `AB = c` is walked B -> C -> A -> B:
//! `alpha = e^{i theta}`, `beta = e^{-i phi}`, `gamma = -1` where
//! `theta = angle ABC` and `phi = angle CAB`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::CertificateError;

/// Relative slack for the feasibility and collinearity tests.
const RELATIVE_SLACK: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TriangleCoefficients {
    pub alpha: Complex64,
    pub beta: Complex64,
    pub gamma: Complex64,
    pub a: f64,
    pub b: f64,
    pub c: f64,
    /// Angle at B of the (permuted) triangle, radians. Zero on the
    /// degenerate branches.
    pub theta: f64,
    /// Angle at A of the (permuted) triangle, radians.
    pub phi: f64,
}

impl TriangleCoefficients {
    pub fn coefficients(&self) -> [Complex64; 3] {
        [self.alpha, self.beta, self.gamma]
    }

    /// `|a alpha + b beta + c gamma|`.
    pub fn residual(&self) -> f64 {
        (self.alpha * self.a + self.beta * self.b + self.gamma * self.c).norm()
    }
}

fn one() -> Complex64 {
    Complex64::new(1.0, 0.0)
}

pub fn triangle_coefficients(
    a: f64,
    b: f64,
    c: f64,
) -> Result<TriangleCoefficients, CertificateError> {
    let sides = [a, b, c];
    if sides.iter().any(|s| !s.is_finite() || *s < 0.0) {
        return Err(CertificateError::Infeasible { a, b, c });
    }
    let sum = a + b + c;
    let max = a.max(b).max(c);
    if 2.0 * max - sum > 2.0 * RELATIVE_SLACK * sum {
        return Err(CertificateError::Infeasible { a, b, c });
    }
    let done = |coef: [Complex64; 3], theta, phi| TriangleCoefficients {
        alpha: coef[0],
        beta: coef[1],
        gamma: coef[2],
        a,
        b,
        c,
        theta,
        phi,
    };

    // Zero sides: the two remaining sides are equal and take +1 / -1.
    let zeros = sides.iter().filter(|&&s| s == 0.0).count();
    if zeros == 3 {
        return Ok(done([one(); 3], 0.0, 0.0));
    }
    if zeros == 1 {
        let mut coef = [one(); 3];
        let second_nonzero = (0..3)
            .filter(|&i| sides[i] != 0.0)
            .nth(1)
            .expect("two nonzero sides");
        coef[second_nonzero] = -one();
        return Ok(done(coef, 0.0, 0.0));
    }

    // Move the largest side into the last slot.
    let largest = if c >= a && c >= b {
        2
    } else if b >= a {
        1
    } else {
        0
    };
    let mut perm = [0, 1, 2];
    perm.swap(largest, 2);
    let (pa, pb, pc) = (sides[perm[0]], sides[perm[1]], sides[perm[2]]);

    let (permuted, theta, phi) = if pa + pb - pc <= RELATIVE_SLACK * sum {
        ([one(), one(), -one()], 0.0, 0.0)
    } else {
        let area = heron_area(pa, pb, pc);
        let theta = f64::atan2(
            2.0 * area / (pa * pc),
            (pa * pa + pc * pc - pb * pb) / (2.0 * pa * pc),
        );
        let phi = f64::atan2(
            2.0 * area / (pb * pc),
            (pb * pb + pc * pc - pa * pa) / (2.0 * pb * pc),
        );
        (
            [
                Complex64::from_polar(1.0, theta),
                Complex64::from_polar(1.0, -phi),
                -one(),
            ],
            theta,
            phi,
        )
    };
    let mut coef = [one(); 3];
    for (slot, &orig) in perm.iter().enumerate() {
        coef[orig] = permuted[slot];
    }
    Ok(done(coef, theta, phi))
}

/// Area of a triangle by Kahan's rearrangement of Heron's formula, stable
/// for needle-shaped triangles.
fn heron_area(a: f64, b: f64, c: f64) -> f64 {
    let mut s = [a, b, c];
    s.sort_by(|x, y| y.total_cmp(x));
    let [x, y, z] = s;
    let p = (x + (y + z)) * (z - (x - y)) * (z + (x - y)) * (x + (y - z));
    0.25 * p.max(0.0).sqrt()
}
