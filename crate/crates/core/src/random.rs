//! Seeded random instance generators.
//!
//! All generators draw from a caller-supplied RNG; [`seeded`] gives the
//! reproducible ChaCha stream used across the crate and the CLI.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::algebra::{AlgebraElement, AlgebraShape, CentralElement};
use crate::error::{Error, Result};
use crate::frames::FrameSystem;
use crate::linalg::CMatrix;
use crate::module_space::{ModuleOperator, ModuleShape, ModuleVector};
use crate::multipliers::Symbol;

pub type DefaultRng = ChaCha8Rng;

pub fn seeded(seed: u64) -> DefaultRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Standard complex Gaussian (`E|z|² = 1`).
pub fn complex_gaussian<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

pub fn gaussian_matrix<R: Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> CMatrix {
    CMatrix::from_fn(rows, cols, |_, _| complex_gaussian(rng))
}

/// Haar-ish random unitary from the QR factorization of a Gaussian matrix.
pub fn unitary<R: Rng + ?Sized>(n: usize, rng: &mut R) -> CMatrix {
    gaussian_matrix(n, n, rng).qr().q()
}

/// Random Hermitian matrix `U diag(eigenvalues) U*`.
pub fn hermitian_with_spectrum<R: Rng + ?Sized>(eigenvalues: &[f64], rng: &mut R) -> CMatrix {
    let n = eigenvalues.len();
    let u = unitary(n, rng);
    let mut scaled = u.clone();
    for (c, &lambda) in eigenvalues.iter().enumerate() {
        for i in 0..n {
            scaled[(i, c)] *= lambda;
        }
    }
    crate::linalg::hermitian_part(&(scaled * u.adjoint()))
}

pub fn element<R: Rng + ?Sized>(shape: &AlgebraShape, rng: &mut R) -> AlgebraElement {
    let blocks = shape.block_dims().iter().map(|&d| gaussian_matrix(d, d, rng)).collect();
    AlgebraElement::from_blocks(shape.clone(), blocks).expect("generated blocks match shape")
}

pub fn central<R: Rng + ?Sized>(shape: &AlgebraShape, rng: &mut R) -> CentralElement {
    let scalars = (0..shape.num_blocks()).map(|_| complex_gaussian(rng)).collect();
    CentralElement::new(shape.clone(), scalars).expect("one scalar per block")
}

pub fn vector<R: Rng + ?Sized>(shape: &ModuleShape, rng: &mut R) -> ModuleVector {
    let blocks = shape.flat_dims().map(|(r, c)| gaussian_matrix(r, c, rng)).collect();
    ModuleVector::from_flattened(shape, blocks).expect("generated flattenings match shape")
}

/// Random vector rescaled to module norm one.
pub fn unit_vector<R: Rng + ?Sized>(shape: &ModuleShape, rng: &mut R) -> ModuleVector {
    let v = vector(shape, rng);
    let n = v.norm();
    v.scale(Complex64::new(1.0 / n, 0.0))
}

/// Dense random operator (generally neither self-adjoint nor normal).
pub fn operator<R: Rng + ?Sized>(shape: &ModuleShape, rng: &mut R) -> ModuleOperator {
    let blocks = shape.flat_dims().map(|(_, n)| gaussian_matrix(n, n, rng)).collect();
    ModuleOperator::from_block_mats(shape, blocks).expect("generated blocks match shape")
}

fn spread_spectrum<R: Rng + ?Sized>(n: usize, lower: f64, upper: f64, rng: &mut R) -> Vec<f64> {
    (0..n)
        .map(|k| match k {
            0 => lower,
            k if k == n - 1 => upper,
            _ => rng.random_range(lower..=upper),
        })
        .collect()
}

/// Random self-adjoint operator whose block spectra lie in `[lower, upper]`
/// with both endpoints attained.
pub fn self_adjoint_operator<R: Rng + ?Sized>(
    shape: &ModuleShape,
    lower: f64,
    upper: f64,
    rng: &mut R,
) -> ModuleOperator {
    let total: usize = shape.flat_dims().map(|(_, n)| n).sum();
    let mut spectrum = spread_spectrum(total, lower, upper, rng);
    // shuffle the endpoints across blocks
    for i in (1..spectrum.len()).rev() {
        let j = rng.random_range(0..=i);
        spectrum.swap(i, j);
    }
    let mut offset = 0;
    let blocks = shape
        .flat_dims()
        .map(|(_, n)| {
            let m = hermitian_with_spectrum(&spectrum[offset..offset + n], rng);
            offset += n;
            m
        })
        .collect();
    ModuleOperator::from_block_mats(shape, blocks).expect("generated blocks match shape")
}

pub fn frame<R: Rng + ?Sized>(shape: &ModuleShape, count: usize, rng: &mut R) -> Result<FrameSystem> {
    let vectors = (0..count).map(|_| vector(shape, rng)).collect();
    FrameSystem::new(shape, vectors)
}

/// Random frame whose optimal bounds are exactly `lower` and `upper`.
///
/// Needs `count ≥ rank` so that a generic Gaussian system is a frame.
pub fn frame_with_bounds<R: Rng + ?Sized>(
    shape: &ModuleShape,
    count: usize,
    lower: f64,
    upper: f64,
    rng: &mut R,
) -> Result<FrameSystem> {
    if !(lower > 0.0 && lower <= upper) {
        return Err(Error::InvalidParameter(format!(
            "frame bounds must satisfy 0 < lower <= upper, got ({lower}, {upper})"
        )));
    }
    let target = self_adjoint_operator(shape, lower, upper, rng);
    let base = frame(shape, count, rng)?;
    base.with_frame_operator(&target)
}

/// Symbol with independent real weights drawn uniformly from `[lower, upper]`
/// in every block.
pub fn real_symbol<R: Rng + ?Sized>(
    shape: &AlgebraShape,
    count: usize,
    lower: f64,
    upper: f64,
    rng: &mut R,
) -> Result<Symbol> {
    if !(lower <= upper) {
        return Err(Error::InvalidParameter(format!(
            "empty weight range [{lower}, {upper}]"
        )));
    }
    let values = (0..count)
        .map(|_| {
            let scalars = (0..shape.num_blocks())
                .map(|_| Complex64::new(rng.random_range(lower..=upper), 0.0))
                .collect();
            CentralElement::new(shape.clone(), scalars).expect("one scalar per block")
        })
        .collect();
    Symbol::new(shape.clone(), values)
}
