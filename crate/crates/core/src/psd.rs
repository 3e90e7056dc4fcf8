//! Exact positive-semidefiniteness certificates for rational symmetric matrices.
//!
//! A symmetric `LDLᵀ` with diagonal pivoting is run in exact arithmetic. Success
//! yields `M = Σ_k d_k l_k l_kᵀ` with every `d_k > 0`; failure yields a vector
//! `v` with `vᵀMv < 0`.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::folner::{FolnerSequence, HElem};
use crate::scalar::Rational;

pub type Matrix = Vec<Vec<Rational>>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ldl {
    /// Pivot indices in elimination order.
    pub pivots: Vec<usize>,
    /// Full-length columns; `columns[k][pivots[k]] = 1`, zero at earlier pivots.
    pub columns: Vec<Vec<Rational>>,
    pub diag: Vec<Rational>,
}

impl Ldl {
    pub fn rank(&self) -> usize {
        self.diag.len()
    }

    /// Rebuilds `Σ d_k l_k l_kᵀ` and compares with `m`.
    pub fn verify(&self, m: &Matrix) -> bool {
        let n = m.len();
        if self.diag.iter().any(|d| !d.is_positive()) {
            return false;
        }
        (0..n).all(|i| {
            (0..n).all(|j| {
                let s: Rational = self
                    .columns
                    .iter()
                    .zip(&self.diag)
                    .map(|(l, d)| &l[i] * &l[j] * d)
                    .sum();
                s == m[i][j]
            })
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PsdOutcome {
    Psd(Ldl),
    NotPsd { witness: Vec<Rational>, value: Rational },
}

impl PsdOutcome {
    pub fn is_psd(&self) -> bool {
        matches!(self, PsdOutcome::Psd(_))
    }
}

pub fn quadratic_form(m: &Matrix, v: &[Rational]) -> Rational {
    let mut acc = Rational::zero();
    for (i, row) in m.iter().enumerate() {
        for (j, x) in row.iter().enumerate() {
            acc += &v[i] * x * &v[j];
        }
    }
    acc
}

/// Certifies a symmetric rational matrix.
pub fn certify_psd(m: &Matrix) -> PsdOutcome {
    let n = m.len();
    let mut a = m.clone();
    let mut rem: Vec<usize> = (0..n).collect();
    let mut ldl = Ldl {
        pivots: Vec::new(),
        columns: Vec::new(),
        diag: Vec::new(),
    };
    loop {
        if let Some(&j) = rem.iter().find(|&&j| a[j][j].is_negative()) {
            let mut w = vec![Rational::zero(); n];
            w[j] = Rational::one();
            return not_psd(m, &ldl, &rem, w);
        }
        let pivot = rem
            .iter()
            .copied()
            .filter(|&j| a[j][j].is_positive())
            .max_by(|&x, &y| a[x][x].cmp(&a[y][y]));
        let Some(j) = pivot else {
            // zero diagonal: the remaining block must vanish
            for &i in &rem {
                for &k in &rem {
                    if i != k && !a[i][k].is_zero() {
                        let mut w = vec![Rational::zero(); n];
                        w[i] = Rational::one();
                        w[k] = -a[i][k].clone();
                        return not_psd(m, &ldl, &rem, w);
                    }
                }
            }
            return PsdOutcome::Psd(ldl);
        };
        let d = a[j][j].clone();
        rem.retain(|&i| i != j);
        let mut col = vec![Rational::zero(); n];
        col[j] = Rational::one();
        for &i in &rem {
            col[i] = &a[i][j] / &d;
        }
        for &i in &rem {
            for &k in &rem {
                let delta = &col[i] * &col[k] * &d;
                a[i][k] -= delta;
            }
        }
        ldl.pivots.push(j);
        ldl.columns.push(col);
        ldl.diag.push(d);
    }
}

/// Lifts a Schur-complement witness `w` (supported on `rem`) to `v = (y, w)` with
/// `Lᵀ y = −L₂₁ᵀ w`, so that `vᵀMv = wᵀSw < 0`.
fn not_psd(m: &Matrix, ldl: &Ldl, rem: &[usize], w: Vec<Rational>) -> PsdOutcome {
    let mut v = w;
    for k in (0..ldl.pivots.len()).rev() {
        let col = &ldl.columns[k];
        let mut y = Rational::zero();
        for &i in rem {
            y -= &col[i] * &v[i];
        }
        for later in &ldl.pivots[k + 1..] {
            y -= &col[*later] * &v[*later];
        }
        v[ldl.pivots[k]] = y;
    }
    let value = quadratic_form(m, &v);
    debug_assert!(value.is_negative());
    PsdOutcome::NotPsd { witness: v, value }
}

/// Gram matrix `M_ij = φₙ(h_i⁻¹ h_j)` of a sample.
pub fn gram_matrix(fs: &FolnerSequence, n: usize, sample: &[HElem]) -> Result<Matrix> {
    if sample.is_empty() {
        return Err(Error::EmptySample);
    }
    for (i, h) in sample.iter().enumerate() {
        if sample[..i].contains(h) {
            return Err(Error::DuplicateSample(h.to_string()));
        }
    }
    sample
        .iter()
        .map(|a| sample.iter().map(|b| fs.phi(n, &b.sub(a))).collect())
        .collect()
}

/// Certifies that `φₙ` is positive definite on the given sample.
pub fn psd_certificate(fs: &FolnerSequence, n: usize, sample: &[HElem]) -> Result<PsdOutcome> {
    Ok(certify_psd(&gram_matrix(fs, n, sample)?))
}
