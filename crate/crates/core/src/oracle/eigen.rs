//! Top eigenvalue of a banded hermitian matrix.
//!
//! Bisection on positive definiteness of σI − H (a banded LDLᴴ factorisation
//! succeeds iff σ exceeds every eigenvalue) brackets λ_max; shifted inverse
//! iteration from the normalised all-ones vector, reusing the factorisation
//! at the upper end of the bracket, then converges to the top eigenvector and
//! the Rayleigh quotient is returned.

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;

use super::truncation::BandedHermitian;
use crate::error::{invalid, Error, Result};

const MAX_INVERSE_ITERATIONS: usize = 100;
const MAX_BISECTION_STEPS: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TopEigen {
    pub value: f64,
    /// ‖Hx − ρx‖ for the returned unit vector x.
    pub residual: f64,
    pub bisection_steps: usize,
    pub iterations: usize,
}

/// LDLᴴ factors of σI − H, with bandwidth 2: `lower[k-1][i]` = L[i+k, i].
struct BandFactor {
    d: Vec<f64>,
    lower: [Vec<Complex64>; 2],
}

/// Returns `None` as soon as a pivot is not strictly positive.
fn factor_shifted(h: &BandedHermitian, sigma: f64) -> Option<BandFactor> {
    let n = h.dim();
    let zero = Complex64::new(0.0, 0.0);
    let mut d = vec![0.0; n];
    let mut lower = [vec![zero; n.saturating_sub(1)], vec![zero; n.saturating_sub(2)]];
    // A = σI − H; below the diagonal A[i, j] = −conj(H[j, i])
    for i in 0..n {
        if i >= 2 {
            let j = i - 2;
            let a_ij = -h.upper[1][j].conj();
            lower[1][j] = a_ij / d[j];
        }
        if i >= 1 {
            let j = i - 1;
            let mut a_ij = -h.upper[0][j].conj();
            if i >= 2 {
                // Σ over m = i−2 < j
                a_ij -= lower[1][i - 2] * lower[0][i - 2].conj() * d[i - 2];
            }
            lower[0][j] = a_ij / d[j];
        }
        let mut piv = sigma - h.diag[i];
        if i >= 1 {
            piv -= lower[0][i - 1].norm_sqr() * d[i - 1];
        }
        if i >= 2 {
            piv -= lower[1][i - 2].norm_sqr() * d[i - 2];
        }
        if !(piv > 0.0) {
            return None;
        }
        d[i] = piv;
    }
    Some(BandFactor { d, lower })
}

impl BandFactor {
    fn solve(&self, b: &[Complex64]) -> Vec<Complex64> {
        let n = self.d.len();
        let mut y = b.to_vec();
        for i in 0..n {
            if i >= 1 {
                let t = self.lower[0][i - 1] * y[i - 1];
                y[i] -= t;
            }
            if i >= 2 {
                let t = self.lower[1][i - 2] * y[i - 2];
                y[i] -= t;
            }
        }
        for i in 0..n {
            y[i] /= self.d[i];
        }
        for i in (0..n).rev() {
            if i + 1 < n {
                let t = self.lower[0][i].conj() * y[i + 1];
                y[i] -= t;
            }
            if i + 2 < n {
                let t = self.lower[1][i].conj() * y[i + 2];
                y[i] -= t;
            }
        }
        y
    }
}

fn norm(x: &[Complex64]) -> f64 {
    x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

fn dot(x: &[Complex64], y: &[Complex64]) -> Complex64 {
    x.iter().zip(y).map(|(a, b)| a.conj() * b).sum()
}

/// Largest eigenvalue of a banded hermitian matrix; `target` is the
/// Rayleigh-quotient residual at which iteration stops.
pub fn top_eigenvalue(h: &BandedHermitian, target: f64) -> Result<TopEigen> {
    let n = h.dim();
    if n == 0 {
        return Err(invalid("dimension", 0, "empty matrix"));
    }
    let start = vec![Complex64::new(1.0 / (n as f64).sqrt(), 0.0); n];
    let rq = |x: &[Complex64]| dot(x, &h.matvec(x)).re;

    // bracket: the Rayleigh quotient of the start vector is a lower bound
    let mut lo = rq(&start);
    let g = h.gershgorin_upper();
    let mut hi = g + 1e-3 * (1.0 + g.abs());
    let mut factor = factor_shifted(h, hi).expect("shift above the Gershgorin bound");
    let mut steps = 0;
    while steps < MAX_BISECTION_STEPS {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi || hi - lo <= 4.0 * f64::EPSILON * (1.0 + hi.abs()) {
            break;
        }
        steps += 1;
        match factor_shifted(h, mid) {
            Some(f) => {
                hi = mid;
                factor = f;
            }
            None => lo = mid,
        }
    }

    let mut x = start;
    let mut residual = f64::INFINITY;
    let mut value;
    for it in 1..=MAX_INVERSE_ITERATIONS {
        let y = factor.solve(&x);
        let ny = norm(&y);
        if !ny.is_finite() || ny == 0.0 {
            break;
        }
        x = y.into_iter().map(|z| z / ny).collect();
        let hx = h.matvec(&x);
        value = dot(&x, &hx).re;
        residual = norm(
            &hx.iter()
                .zip(&x)
                .map(|(a, b)| a - b * value)
                .collect::<Vec<_>>(),
        );
        if residual <= target {
            return Ok(TopEigen {
                value,
                residual,
                bisection_steps: steps,
                iterations: it,
            });
        }
    }
    Err(Error::EigenNonConvergence {
        iterations: MAX_INVERSE_ITERATIONS,
        residual,
        target,
    })
}

/// Largest eigenvalue of a dense hermitian matrix by full decomposition.
pub fn dense_top_eigenvalue(m: DMatrix<Complex64>) -> f64 {
    SymmetricEigen::new(m)
        .eigenvalues
        .iter()
        .copied()
        .fold(f64::NEG_INFINITY, f64::max)
}
