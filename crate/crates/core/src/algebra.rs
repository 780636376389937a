//! Finite-dimensional C*-algebras `A = M_{d_1}(ℂ) ⊕ … ⊕ M_{d_B}(ℂ)`.
//!
//! Every finite-dimensional C*-algebra is of this form. An element is a
//! list of square complex blocks; product, adjoint and functional calculus
//! act blockwise. The center `Z(A)` consists of the elements that are a
//! scalar multiple of the identity in every block, and is represented
//! exactly by [`CentralElement`].

use serde::{Deserialize, Serialize};

use num_complex::Complex64;

use crate::error::{shape_mismatch, Error, Result};
use crate::linalg::{self, CMatrix, ONE, ZERO};

/// Block sizes `(d_1, …, d_B)` of the algebra.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "ShapeRepr", into = "ShapeRepr")]
pub struct AlgebraShape {
    block_dims: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct ShapeRepr {
    block_dims: Vec<usize>,
}

impl TryFrom<ShapeRepr> for AlgebraShape {
    type Error = Error;
    fn try_from(r: ShapeRepr) -> Result<Self> {
        AlgebraShape::new(r.block_dims)
    }
}

impl From<AlgebraShape> for ShapeRepr {
    fn from(s: AlgebraShape) -> Self {
        ShapeRepr {
            block_dims: s.block_dims,
        }
    }
}

impl AlgebraShape {
    pub fn new(block_dims: Vec<usize>) -> Result<Self> {
        if block_dims.is_empty() {
            return Err(Error::InvalidParameter("algebra needs at least one block".into()));
        }
        if block_dims.contains(&0) {
            return Err(Error::InvalidParameter(format!(
                "block dimensions must be positive, got {block_dims:?}"
            )));
        }
        Ok(Self { block_dims })
    }

    /// The algebra `ℂ` (one block of size one).
    pub fn complex() -> Self {
        Self { block_dims: vec![1] }
    }

    pub fn block_dims(&self) -> &[usize] {
        &self.block_dims
    }

    pub fn num_blocks(&self) -> usize {
        self.block_dims.len()
    }

    /// Complex dimension `Σ d_b²`.
    pub fn dimension(&self) -> usize {
        self.block_dims.iter().map(|d| d * d).sum()
    }

    pub fn check(&self, other: &AlgebraShape) -> Result<()> {
        if self != other {
            return Err(shape_mismatch(self, other));
        }
        Ok(())
    }
}

/// An element of `A`, stored blockwise.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "ElementRepr", into = "ElementRepr")]
pub struct AlgebraElement {
    shape: AlgebraShape,
    blocks: Vec<CMatrix>,
}

#[derive(Serialize, Deserialize)]
pub(crate) struct ElementRepr {
    block_dims: Vec<usize>,
    blocks: Vec<Vec<Vec<Complex64>>>,
}

pub(crate) fn matrix_to_rows(m: &CMatrix) -> Vec<Vec<Complex64>> {
    (0..m.nrows())
        .map(|i| (0..m.ncols()).map(|j| m[(i, j)]).collect())
        .collect()
}

pub(crate) fn matrix_from_rows(rows: &[Vec<Complex64>], nrows: usize, ncols: usize) -> Result<CMatrix> {
    if rows.len() != nrows || rows.iter().any(|r| r.len() != ncols) {
        let actual = format!("{}x{:?}", rows.len(), rows.iter().map(Vec::len).collect::<Vec<_>>());
        return Err(Error::ShapeMismatch {
            expected: format!("{nrows}x{ncols} matrix"),
            actual,
        });
    }
    Ok(CMatrix::from_fn(nrows, ncols, |i, j| rows[i][j]))
}

impl TryFrom<ElementRepr> for AlgebraElement {
    type Error = Error;
    fn try_from(r: ElementRepr) -> Result<Self> {
        let shape = AlgebraShape::new(r.block_dims)?;
        if r.blocks.len() != shape.num_blocks() {
            return Err(Error::LengthMismatch {
                expected: shape.num_blocks(),
                actual: r.blocks.len(),
            });
        }
        let blocks = r
            .blocks
            .iter()
            .zip(shape.block_dims())
            .map(|(rows, &d)| matrix_from_rows(rows, d, d))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { shape, blocks })
    }
}

impl From<AlgebraElement> for ElementRepr {
    fn from(a: AlgebraElement) -> Self {
        ElementRepr {
            blocks: a.blocks.iter().map(matrix_to_rows).collect(),
            block_dims: a.shape.block_dims,
        }
    }
}

impl AlgebraElement {
    pub fn from_blocks(shape: AlgebraShape, blocks: Vec<CMatrix>) -> Result<Self> {
        if blocks.len() != shape.num_blocks() {
            return Err(Error::LengthMismatch {
                expected: shape.num_blocks(),
                actual: blocks.len(),
            });
        }
        for (m, &d) in blocks.iter().zip(shape.block_dims()) {
            if m.nrows() != d || m.ncols() != d {
                return Err(Error::ShapeMismatch {
                    expected: format!("{d}x{d} block"),
                    actual: format!("{}x{} block", m.nrows(), m.ncols()),
                });
            }
        }
        Ok(Self { shape, blocks })
    }

    pub(crate) fn from_blocks_unchecked(shape: AlgebraShape, blocks: Vec<CMatrix>) -> Self {
        debug_assert_eq!(blocks.len(), shape.num_blocks());
        Self { shape, blocks }
    }

    pub fn zero(shape: &AlgebraShape) -> Self {
        Self::scalar(shape, ZERO)
    }

    pub fn identity(shape: &AlgebraShape) -> Self {
        Self::scalar(shape, ONE)
    }

    pub fn scalar(shape: &AlgebraShape, c: Complex64) -> Self {
        let blocks = shape.block_dims().iter().map(|&d| linalg::identity(d) * c).collect();
        Self {
            shape: shape.clone(),
            blocks,
        }
    }

    /// The matrix unit `E_{kl}` inside block `b` (zero elsewhere).
    pub fn matrix_unit(shape: &AlgebraShape, block: usize, k: usize, l: usize) -> Result<Self> {
        let d = *shape
            .block_dims()
            .get(block)
            .ok_or_else(|| Error::InvalidParameter(format!("block index {block} out of range")))?;
        if k >= d || l >= d {
            return Err(Error::InvalidParameter(format!(
                "matrix unit ({k},{l}) out of range for block of size {d}"
            )));
        }
        let mut a = Self::zero(shape);
        a.blocks[block][(k, l)] = ONE;
        Ok(a)
    }

    /// All matrix units of the algebra; they span `A` over `ℂ`.
    pub fn matrix_units(shape: &AlgebraShape) -> Vec<Self> {
        let mut units = Vec::with_capacity(shape.dimension());
        for (b, &d) in shape.block_dims().iter().enumerate() {
            for k in 0..d {
                for l in 0..d {
                    let mut a = Self::zero(shape);
                    a.blocks[b][(k, l)] = ONE;
                    units.push(a);
                }
            }
        }
        units
    }

    pub fn shape(&self) -> &AlgebraShape {
        &self.shape
    }

    pub fn blocks(&self) -> &[CMatrix] {
        &self.blocks
    }

    pub fn block(&self, b: usize) -> &CMatrix {
        &self.blocks[b]
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&CMatrix, &CMatrix) -> CMatrix) -> Result<Self> {
        self.shape.check(&other.shape)?;
        let blocks = self.blocks.iter().zip(&other.blocks).map(|(x, y)| f(x, y)).collect();
        Ok(Self {
            shape: self.shape.clone(),
            blocks,
        })
    }

    fn map(&self, f: impl Fn(&CMatrix) -> CMatrix) -> Self {
        Self {
            shape: self.shape.clone(),
            blocks: self.blocks.iter().map(f).collect(),
        }
    }

    /// Blockwise matrix product.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |x, y| x * y)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |x, y| x + y)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |x, y| x - y)
    }

    pub fn scale(&self, c: Complex64) -> Self {
        self.map(|x| x * c)
    }

    /// The involution: blockwise conjugate transpose.
    pub fn adjoint(&self) -> Self {
        self.map(|x| x.adjoint())
    }

    /// `(a + a*) / 2`.
    pub fn hermitian_part(&self) -> Self {
        self.map(linalg::hermitian_part)
    }

    /// C*-norm: largest singular value over all blocks.
    pub fn norm(&self) -> f64 {
        self.blocks.iter().map(linalg::spectral_norm).fold(0.0, f64::max)
    }

    /// Eigenvalues of the Hermitian part, ascending, concatenated over blocks
    /// in block order.
    pub fn spectrum_hermitian(&self) -> Vec<f64> {
        self.blocks.iter().flat_map(linalg::hermitian_eigenvalues).collect()
    }

    /// Smallest eigenvalue of the Hermitian part over all blocks.
    pub fn min_eigenvalue(&self) -> f64 {
        self.blocks
            .iter()
            .map(|m| linalg::hermitian_eigenvalues(m)[0])
            .fold(f64::INFINITY, f64::min)
    }

    /// Largest eigenvalue of the Hermitian part over all blocks.
    pub fn max_eigenvalue(&self) -> f64 {
        self.blocks
            .iter()
            .map(|m| *linalg::hermitian_eigenvalues(m).last().unwrap())
            .fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn is_self_adjoint(&self, tol: f64) -> bool {
        self.self_adjoint_defect() <= tol * (1.0 + self.norm())
    }

    /// `‖a − a*‖`.
    pub fn self_adjoint_defect(&self) -> f64 {
        self.blocks.iter().map(linalg::hermitian_defect).fold(0.0, f64::max)
    }

    /// `a ≥ 0`: self-adjoint with nonnegative spectrum, both up to the
    /// scale-relative slack `tol·(1 + ‖a‖)`.
    pub fn is_positive(&self, tol: f64) -> bool {
        let slack = tol * (1.0 + self.norm());
        self.self_adjoint_defect() <= slack && self.min_eigenvalue() >= -slack
    }

    /// Loewner order `self ≤ other`, i.e. `other − self ≥ 0`.
    pub fn loewner_leq(&self, other: &Self, tol: f64) -> Result<bool> {
        Ok(other.sub(self)?.is_positive(tol))
    }

    /// Positive square root via Hermitian eigendecomposition. Eigenvalues
    /// within tolerance below zero are clamped.
    pub fn sqrt_positive(&self, tol: f64) -> Result<Self> {
        if !self.is_positive(tol) {
            return Err(Error::NotPositive {
                min_eigenvalue: self.min_eigenvalue(),
            });
        }
        Ok(self.map(|m| linalg::hermitian_function(m, |x| x.max(0.0).sqrt())))
    }

    pub fn inverse(&self) -> Result<Self> {
        let min_sv = self
            .blocks
            .iter()
            .map(linalg::min_singular_value)
            .fold(f64::INFINITY, f64::min);
        if min_sv <= f64::EPSILON * self.norm() {
            return Err(Error::Singular {
                min_singular_value: min_sv,
            });
        }
        let blocks = self
            .blocks
            .iter()
            .map(|m| {
                linalg::inverse(m).ok_or(Error::Singular {
                    min_singular_value: min_sv,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            shape: self.shape.clone(),
            blocks,
        })
    }

    /// Distance to the center: per block, the largest off-diagonal
    /// magnitude plus the spread of the diagonal.
    pub fn distance_to_center(&self) -> f64 {
        self.blocks
            .iter()
            .map(|m| {
                let d = m.nrows();
                let mut off = 0.0f64;
                let mut spread = 0.0f64;
                for i in 0..d {
                    for j in 0..d {
                        if i != j {
                            off = off.max(m[(i, j)].norm());
                        }
                        spread = spread.max((m[(i, i)] - m[(j, j)]).norm());
                    }
                }
                off + spread
            })
            .fold(0.0, f64::max)
    }

    /// Membership in `Z(A)`: every block within `tol` of a scalar matrix.
    pub fn is_central(&self, tol: f64) -> bool {
        self.distance_to_center() <= tol
    }

    /// Projects onto the center by averaging each block's diagonal.
    pub fn to_central(&self, tol: f64) -> Result<CentralElement> {
        let distance = self.distance_to_center();
        if distance > tol {
            return Err(Error::NotCentral { distance });
        }
        let scalars = self.blocks.iter().map(|m| m.trace() / m.nrows() as f64).collect();
        Ok(CentralElement {
            shape: self.shape.clone(),
            scalars,
        })
    }
}

/// An element of the center `Z(A)`: `⊕_b c_b·I_{d_b}`.
#[derive(Debug, Clone, PartialEq)]
pub struct CentralElement {
    shape: AlgebraShape,
    scalars: Vec<Complex64>,
}

impl CentralElement {
    pub fn new(shape: AlgebraShape, scalars: Vec<Complex64>) -> Result<Self> {
        if scalars.len() != shape.num_blocks() {
            return Err(Error::LengthMismatch {
                expected: shape.num_blocks(),
                actual: scalars.len(),
            });
        }
        Ok(Self { shape, scalars })
    }

    /// The same real value in every block.
    pub fn real(shape: &AlgebraShape, value: f64) -> Self {
        Self::uniform(shape, Complex64::new(value, 0.0))
    }

    pub fn uniform(shape: &AlgebraShape, value: Complex64) -> Self {
        Self {
            shape: shape.clone(),
            scalars: vec![value; shape.num_blocks()],
        }
    }

    pub fn shape(&self) -> &AlgebraShape {
        &self.shape
    }

    pub fn scalars(&self) -> &[Complex64] {
        &self.scalars
    }

    pub fn scalar(&self, b: usize) -> Complex64 {
        self.scalars[b]
    }

    pub fn to_element(&self) -> AlgebraElement {
        let blocks = self
            .shape
            .block_dims()
            .iter()
            .zip(&self.scalars)
            .map(|(&d, &c)| linalg::identity(d) * c)
            .collect();
        AlgebraElement {
            shape: self.shape.clone(),
            blocks,
        }
    }

    fn map(&self, f: impl Fn(Complex64) -> Complex64) -> Self {
        Self {
            shape: self.shape.clone(),
            scalars: self.scalars.iter().map(|&c| f(c)).collect(),
        }
    }

    pub fn conj(&self) -> Self {
        self.map(|c| c.conj())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.shape.check(&other.shape)?;
        Ok(Self {
            shape: self.shape.clone(),
            scalars: self.scalars.iter().zip(&other.scalars).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn scale(&self, t: Complex64) -> Self {
        self.map(|c| c * t)
    }

    pub fn inverse(&self) -> Result<Self> {
        let min = self.min_magnitude();
        if min == 0.0 {
            return Err(Error::Singular {
                min_singular_value: 0.0,
            });
        }
        Ok(self.map(|c| c.inv()))
    }

    /// Positive square root; needs every scalar real and nonnegative up to `tol`.
    pub fn sqrt_positive(&self, tol: f64) -> Result<Self> {
        if !self.scalars.iter().all(|c| c.re >= -tol && c.im.abs() <= tol) {
            let min = self.scalars.iter().map(|c| c.re).fold(f64::INFINITY, f64::min);
            return Err(Error::NotPositive { min_eigenvalue: min });
        }
        Ok(self.map(|c| Complex64::new(c.re.max(0.0).sqrt(), 0.0)))
    }

    /// Strictly positive: real part `> tol`, imaginary part within `tol`.
    pub fn is_positive(&self, tol: f64) -> bool {
        self.scalars.iter().all(|c| c.re > tol && c.im.abs() <= tol)
    }

    /// Strictly negative: real part `< -tol`, imaginary part within `tol`.
    pub fn is_negative(&self, tol: f64) -> bool {
        self.scalars.iter().all(|c| c.re < -tol && c.im.abs() <= tol)
    }

    pub fn norm(&self) -> f64 {
        self.scalars.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    pub fn min_magnitude(&self) -> f64 {
        self.scalars.iter().map(|c| c.norm()).fold(f64::INFINITY, f64::min)
    }

    /// `c·a`, computed by scaling each block of `a`.
    pub fn mul_element(&self, a: &AlgebraElement) -> Result<AlgebraElement> {
        self.shape.check(a.shape())?;
        let blocks = a.blocks.iter().zip(&self.scalars).map(|(m, &c)| m * c).collect();
        Ok(AlgebraElement {
            shape: self.shape.clone(),
            blocks,
        })
    }
}
