//! Finite compressions of F_{aI} and their hermitian rotations.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{invalid, Result};

/// Compression of F_{aI} = [[S*, aI], [0, S]] to the first N basis vectors
/// of each block, S e_j = e_{j+1}.
///
/// Entries are stored as `(row, col, value)` triplets in block row-major
/// order over the natural basis e₁⊕0, …, e_N⊕0, 0⊕e₁, …, 0⊕e_N.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedOperator {
    n: usize,
    a: Complex64,
    entries: Vec<(usize, usize, Complex64)>,
}

pub fn build_foguel(a: Complex64, n: usize) -> Result<TruncatedOperator> {
    if n == 0 {
        return Err(invalid("N", 0, "truncation level must be at least 1"));
    }
    if !a.re.is_finite() || !a.im.is_finite() {
        return Err(invalid("a", a, "must be finite"));
    }
    let one = Complex64::new(1.0, 0.0);
    let mut entries = Vec::with_capacity(3 * n);
    // block row 0: S* (superdiagonal) then the coupling diagonal
    for j in 0..n {
        if j + 1 < n {
            entries.push((j, j + 1, one));
        }
        if a != Complex64::new(0.0, 0.0) {
            entries.push((j, n + j, a));
        }
    }
    // block row 1: S (subdiagonal)
    for j in 1..n {
        entries.push((n + j, n + j - 1, one));
    }
    entries.sort_by_key(|&(i, j, _)| (i, j));
    Ok(TruncatedOperator { n, a, entries })
}

impl TruncatedOperator {
    pub fn level(&self) -> usize {
        self.n
    }

    pub fn dimension(&self) -> usize {
        2 * self.n
    }

    pub fn coupling(&self) -> Complex64 {
        self.a
    }

    pub fn entries(&self) -> &[(usize, usize, Complex64)] {
        &self.entries
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn to_dense(&self) -> DMatrix<Complex64> {
        let mut m = DMatrix::zeros(self.dimension(), self.dimension());
        for &(i, j, v) in &self.entries {
            m[(i, j)] = v;
        }
        m
    }

    /// Position of natural basis index `i` in the interleaved order
    /// e₁⊕0, 0⊕e₁, e₂⊕0, 0⊕e₂, …, in which every hermitian rotation has
    /// bandwidth 2.
    pub fn interleave(&self, i: usize) -> usize {
        if i < self.n {
            2 * i
        } else {
            2 * (i - self.n) + 1
        }
    }

    /// (e^{−iθ}F + e^{iθ}F*)/2.
    pub fn hermitian_rotation(&self, theta: f64) -> HermitianRotation {
        let dim = self.dimension();
        let omega_bar = Complex64::from_polar(1.0, -theta);
        let mut band = BandedHermitian::zeros(dim);
        for &(i, j, f) in &self.entries {
            let (p, q) = (self.interleave(i), self.interleave(j));
            let v = omega_bar * f * 0.5;
            if p == q {
                band.diag[p] += v.re;
            } else if p < q {
                band.add_upper(p, q, v);
            } else {
                band.add_upper(q, p, v.conj());
            }
        }
        HermitianRotation {
            theta,
            band,
            n: self.n,
        }
    }
}

/// Hermitian matrix with at most two nonzero superdiagonals.
#[derive(Debug, Clone, PartialEq)]
pub struct BandedHermitian {
    pub diag: Vec<f64>,
    /// `upper[k-1][i]` = H[i, i+k] for k = 1, 2.
    pub upper: [Vec<Complex64>; 2],
}

impl BandedHermitian {
    pub const BANDWIDTH: usize = 2;

    pub fn zeros(dim: usize) -> Self {
        Self {
            diag: vec![0.0; dim],
            upper: [
                vec![Complex64::new(0.0, 0.0); dim.saturating_sub(1)],
                vec![Complex64::new(0.0, 0.0); dim.saturating_sub(2)],
            ],
        }
    }

    pub fn dim(&self) -> usize {
        self.diag.len()
    }

    fn add_upper(&mut self, p: usize, q: usize, v: Complex64) {
        let k = q - p;
        assert!((1..=2).contains(&k), "entry ({p}, {q}) outside the band");
        self.upper[k - 1][p] += v;
    }

    /// H[i, j] for |i − j| ≤ 2, zero otherwise.
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        use std::cmp::Ordering;
        match i.cmp(&j) {
            Ordering::Equal => Complex64::new(self.diag[i], 0.0),
            Ordering::Less if j - i <= 2 => self.upper[j - i - 1][i],
            Ordering::Greater if i - j <= 2 => self.upper[i - j - 1][j].conj(),
            _ => Complex64::new(0.0, 0.0),
        }
    }

    pub fn matvec(&self, x: &[Complex64]) -> Vec<Complex64> {
        let n = self.dim();
        let mut y: Vec<Complex64> = (0..n).map(|i| x[i] * self.diag[i]).collect();
        for k in 1..=2 {
            for i in 0..n.saturating_sub(k) {
                let h = self.upper[k - 1][i];
                y[i] += h * x[i + k];
                y[i + k] += h.conj() * x[i];
            }
        }
        y
    }

    /// max_i Σ_j |H_ij|, an upper bound for every eigenvalue.
    pub fn gershgorin_upper(&self) -> f64 {
        (0..self.dim())
            .map(|i| {
                let lo = i.saturating_sub(2);
                let hi = (i + 2).min(self.dim() - 1);
                self.diag[i]
                    + (lo..=hi)
                        .filter(|&j| j != i)
                        .map(|j| self.get(i, j).norm())
                        .sum::<f64>()
            })
            .fold(f64::NEG_INFINITY, f64::max)
    }
}

/// Hermitian part of the rotated compression, stored in interleaved band
/// form.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianRotation {
    pub theta: f64,
    pub band: BandedHermitian,
    n: usize,
}

impl HermitianRotation {
    /// Dense matrix in the natural (block) ordering.
    pub fn to_dense(&self) -> DMatrix<Complex64> {
        let dim = 2 * self.n;
        let natural = |p: usize| if p % 2 == 0 { p / 2 } else { self.n + p / 2 };
        let mut m = DMatrix::zeros(dim, dim);
        for p in 0..dim {
            m[(natural(p), natural(p))] = Complex64::new(self.band.diag[p], 0.0);
            for k in 1..=2 {
                if p + k < dim {
                    let v = self.band.upper[k - 1][p];
                    m[(natural(p), natural(p + k))] = v;
                    m[(natural(p + k), natural(p))] = v.conj();
                }
            }
        }
        m
    }
}
