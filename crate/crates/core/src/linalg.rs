//! Dense complex matrix helpers shared by every module.
//!
//! All spectral questions in the crate reduce to small Hermitian
//! eigenproblems and singular values of per-block matrices; this module
//! wraps nalgebra for those.

use nalgebra::DMatrix;
use num_complex::Complex64;

pub type CMatrix = DMatrix<Complex64>;

pub(crate) const ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub(crate) const ONE: Complex64 = Complex64::new(1.0, 0.0);

pub(crate) fn identity(n: usize) -> CMatrix {
    CMatrix::identity(n, n)
}

/// `(m + m*) / 2`. The result is exactly Hermitian in floating point.
pub(crate) fn hermitian_part(m: &CMatrix) -> CMatrix {
    let n = m.nrows();
    CMatrix::from_fn(n, n, |i, j| (m[(i, j)] + m[(j, i)].conj()) * 0.5)
}

/// Spectral norm of `m - m*`.
pub(crate) fn hermitian_defect(m: &CMatrix) -> f64 {
    spectral_norm(&(m - m.adjoint()))
}

/// Largest singular value.
pub(crate) fn spectral_norm(m: &CMatrix) -> f64 {
    if m.is_empty() {
        return 0.0;
    }
    m.clone().singular_values().iter().copied().fold(0.0, f64::max)
}

/// Smallest singular value of a square matrix.
pub(crate) fn min_singular_value(m: &CMatrix) -> f64 {
    if m.is_empty() {
        return 0.0;
    }
    m.clone()
        .singular_values()
        .iter()
        .copied()
        .fold(f64::INFINITY, f64::min)
}

/// Eigenvalues (ascending) and unit eigenvectors (as columns, same order)
/// of the Hermitian part of `m`.
pub(crate) fn hermitian_eigen(m: &CMatrix) -> (Vec<f64>, CMatrix) {
    let h = hermitian_part(m);
    let eig = h.symmetric_eigen();
    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    let n = m.nrows();
    let vectors = CMatrix::from_fn(n, n, |i, c| eig.eigenvectors[(i, order[c])]);
    (values, vectors)
}

pub(crate) fn hermitian_eigenvalues(m: &CMatrix) -> Vec<f64> {
    hermitian_eigen(m).0
}

/// Applies `g` to the eigenvalues of the Hermitian part of `m`:
/// `V diag(g(λ)) V*`.
pub(crate) fn hermitian_function(m: &CMatrix, g: impl Fn(f64) -> f64) -> CMatrix {
    let (values, vectors) = hermitian_eigen(m);
    let n = m.nrows();
    let mut scaled = vectors.clone();
    for (c, &lambda) in values.iter().enumerate() {
        let s = g(lambda);
        for i in 0..n {
            scaled[(i, c)] *= s;
        }
    }
    hermitian_part(&(scaled * vectors.adjoint()))
}

pub(crate) fn inverse(m: &CMatrix) -> Option<CMatrix> {
    m.clone().try_inverse()
}
