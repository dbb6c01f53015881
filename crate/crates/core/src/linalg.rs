//! Small dense complex matrix helpers.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type CMat = DMatrix<Complex64>;

pub fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

pub fn zeros(n: usize) -> CMat {
    CMat::zeros(n, n)
}

pub fn identity(n: usize) -> CMat {
    CMat::identity(n, n)
}

pub fn from_real(n: usize, entries: &[f64]) -> CMat {
    CMat::from_row_slice(n, n, &entries.iter().map(|&x| c(x)).collect::<Vec<_>>())
}

pub fn diag(values: &[f64]) -> CMat {
    let mut m = zeros(values.len());
    for (i, &v) in values.iter().enumerate() {
        m[(i, i)] = c(v);
    }
    m
}

pub fn max_abs(m: &CMat) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

pub fn max_abs_diff(a: &CMat, b: &CMat) -> f64 {
    max_abs(&(a - b))
}

/// Copies `block` into `target` with its top-left corner at (at, at).
pub fn place(target: &mut CMat, block: &CMat, at: usize) {
    target
        .view_mut((at, at), (block.nrows(), block.ncols()))
        .copy_from(block);
}

pub fn direct_sum(blocks: &[CMat]) -> CMat {
    let n = blocks.iter().map(|b| b.nrows()).sum();
    let mut m = zeros(n);
    let mut at = 0;
    for b in blocks {
        place(&mut m, b, at);
        at += b.nrows();
    }
    m
}

/// Rank-one projection `½[[1+τ, s√(1−τ²)], [s√(1−τ²), 1−τ]]`, `s = ±1`, with
/// the off-diagonal additionally carrying the phase `gamma` above the diagonal.
pub fn rank_one(tau: f64, sign: f64, gamma: Complex64) -> Result<CMat> {
    if !(tau > -1.0 && tau < 1.0) {
        return Err(Error::TauOutOfRange(tau));
    }
    let off = sign * (1.0 - tau * tau).sqrt() / 2.0;
    let mut m = zeros(2);
    m[(0, 0)] = c((1.0 + tau) / 2.0);
    m[(1, 1)] = c((1.0 - tau) / 2.0);
    m[(0, 1)] = gamma * off;
    m[(1, 0)] = gamma.conj() * off;
    Ok(m)
}

/// Eigenvalues of a Hermitian matrix, ascending.
pub fn hermitian_eigenvalues(m: &CMat) -> Vec<f64> {
    let h = (m + m.adjoint()) * c(0.5);
    let mut ev: Vec<f64> = h.symmetric_eigenvalues().iter().copied().collect();
    ev.sort_by(f64::total_cmp);
    ev
}

/// Orthonormal bases of the range and kernel of an orthogonal projection.
pub fn range_and_kernel(p: &CMat) -> (CMat, CMat) {
    let n = p.nrows();
    let h = (p + p.adjoint()) * c(0.5);
    let eig = h.symmetric_eigen();
    let range: Vec<usize> = (0..n).filter(|&i| eig.eigenvalues[i] > 0.5).collect();
    let kernel: Vec<usize> = (0..n).filter(|&i| eig.eigenvalues[i] <= 0.5).collect();
    let pick = |idx: &[usize]| CMat::from_fn(n, idx.len(), |r, k| eig.eigenvectors[(r, idx[k])]);
    (pick(&range), pick(&kernel))
}

/// Smallest principal angle between the column spans of two orthonormal
/// bases; `π/2` when either subspace is zero.
pub fn min_principal_angle(a: &CMat, b: &CMat) -> f64 {
    if a.ncols() == 0 || b.ncols() == 0 {
        return std::f64::consts::FRAC_PI_2;
    }
    let m = a.adjoint() * b;
    let s = m.singular_values();
    let top = s.iter().copied().fold(0.0, f64::max).min(1.0);
    top.acos()
}

/// Kronecker product.
pub fn kron(a: &CMat, b: &CMat) -> CMat {
    let (ar, ac) = a.shape();
    let (br, bc) = b.shape();
    CMat::from_fn(ar * br, ac * bc, |i, j| a[(i / br, j / bc)] * b[(i % br, j % bc)])
}
