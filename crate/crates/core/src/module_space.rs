//! The Hilbert `A`-module `H = Aⁿ` and its adjointable operators.
//!
//! `A` acts on the left, `a·(f_1, …, f_n) = (a f_1, …, a f_n)`, and the
//! `A`-valued inner product is `⟨f, g⟩ = Σ_i f_i g_i*`.
//!
//! # Representation
//!
//! A vector is stored through its per-block flattenings: block `b` of `f`
//! is the `d_b × (d_b·n)` matrix `F_b = [f_1^{(b)} | … | f_n^{(b)}]`. In
//! these coordinates `⟨f, g⟩^{(b)} = F_b G_b*` and the left action is
//! `F_b ↦ a^{(b)} F_b`.
//!
//! The adjointable `A`-linear maps on `Aⁿ` are exactly the right
//! multiplications `F_b ↦ F_b R_b` by `(d_b·n) × (d_b·n)` matrices, so a
//! [`ModuleOperator`] stores the matrices `R_b`. The adjoint is `R_b*`.
//! Because the action is on the right, composition reverses the matrix
//! order: `T ∘ U` (apply `U` first) has matrices `R_U · R_T`. See
//! [`ModuleOperator::compose`].

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::algebra::{matrix_from_rows, matrix_to_rows, AlgebraElement, AlgebraShape, CentralElement};
use crate::error::{shape_mismatch, Error, Result};
use crate::linalg::{self, CMatrix, ZERO};

/// `Aⁿ`: the algebra and the rank `n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ModuleShape {
    algebra: AlgebraShape,
    rank: usize,
}

impl ModuleShape {
    pub fn new(algebra: AlgebraShape, rank: usize) -> Result<Self> {
        if rank == 0 {
            return Err(Error::InvalidParameter("module rank must be at least 1".into()));
        }
        Ok(Self { algebra, rank })
    }

    pub fn algebra(&self) -> &AlgebraShape {
        &self.algebra
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// `(d_b, d_b·n)` for every block.
    pub fn flat_dims(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.algebra.block_dims().iter().map(move |&d| (d, d * self.rank))
    }

    pub fn check(&self, other: &ModuleShape) -> Result<()> {
        if self != other {
            return Err(shape_mismatch(self, other));
        }
        Ok(())
    }
}

/// An element of `Aⁿ`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "VectorRepr", into = "VectorRepr")]
pub struct ModuleVector {
    shape: ModuleShape,
    blocks: Vec<CMatrix>,
}

#[derive(Serialize, Deserialize)]
pub(crate) struct VectorRepr {
    algebra: AlgebraShape,
    rank: usize,
    entries: Vec<AlgebraElement>,
}

impl TryFrom<VectorRepr> for ModuleVector {
    type Error = Error;
    fn try_from(r: VectorRepr) -> Result<Self> {
        let shape = ModuleShape::new(r.algebra, r.rank)?;
        ModuleVector::from_entries(&shape, &r.entries)
    }
}

impl From<ModuleVector> for VectorRepr {
    fn from(v: ModuleVector) -> Self {
        VectorRepr {
            entries: v.entries(),
            algebra: v.shape.algebra,
            rank: v.shape.rank,
        }
    }
}

impl ModuleVector {
    pub fn zero(shape: &ModuleShape) -> Self {
        let blocks = shape.flat_dims().map(|(r, c)| CMatrix::zeros(r, c)).collect();
        Self {
            shape: shape.clone(),
            blocks,
        }
    }

    /// The standard generator `e_i` (identity in slot `i`, zero elsewhere).
    pub fn generator(shape: &ModuleShape, i: usize) -> Result<Self> {
        if i >= shape.rank {
            return Err(Error::InvalidParameter(format!(
                "generator index {i} out of range for rank {}",
                shape.rank
            )));
        }
        let mut v = Self::zero(shape);
        for (b, &d) in shape.algebra.block_dims().iter().enumerate() {
            for k in 0..d {
                v.blocks[b][(k, i * d + k)] = linalg::ONE;
            }
        }
        Ok(v)
    }

    /// `a·e_i` for every matrix unit `a` and every slot `i`; these span `H`
    /// over `ℂ`.
    pub fn spanning_set(shape: &ModuleShape) -> Vec<Self> {
        let units = AlgebraElement::matrix_units(&shape.algebra);
        let mut out = Vec::with_capacity(units.len() * shape.rank);
        for i in 0..shape.rank {
            let e = Self::generator(shape, i).expect("slot in range");
            for a in &units {
                out.push(e.left_mul(a).expect("shapes agree"));
            }
        }
        out
    }

    pub fn from_entries(shape: &ModuleShape, entries: &[AlgebraElement]) -> Result<Self> {
        if entries.len() != shape.rank {
            return Err(Error::LengthMismatch {
                expected: shape.rank,
                actual: entries.len(),
            });
        }
        for e in entries {
            shape.algebra.check(e.shape())?;
        }
        let blocks = shape
            .algebra
            .block_dims()
            .iter()
            .enumerate()
            .map(|(b, &d)| {
                let mut m = CMatrix::zeros(d, d * shape.rank);
                for (i, e) in entries.iter().enumerate() {
                    m.view_mut((0, i * d), (d, d)).copy_from(e.block(b));
                }
                m
            })
            .collect();
        Ok(Self {
            shape: shape.clone(),
            blocks,
        })
    }

    /// Builds a vector from its per-block flattenings `F_b`.
    pub fn from_flattened(shape: &ModuleShape, blocks: Vec<CMatrix>) -> Result<Self> {
        if blocks.len() != shape.algebra.num_blocks() {
            return Err(Error::LengthMismatch {
                expected: shape.algebra.num_blocks(),
                actual: blocks.len(),
            });
        }
        for (m, (r, c)) in blocks.iter().zip(shape.flat_dims()) {
            if m.nrows() != r || m.ncols() != c {
                return Err(Error::ShapeMismatch {
                    expected: format!("{r}x{c} flattening"),
                    actual: format!("{}x{} flattening", m.nrows(), m.ncols()),
                });
            }
        }
        Ok(Self {
            shape: shape.clone(),
            blocks,
        })
    }

    pub(crate) fn from_flattened_unchecked(shape: &ModuleShape, blocks: Vec<CMatrix>) -> Self {
        Self {
            shape: shape.clone(),
            blocks,
        }
    }

    pub fn shape(&self) -> &ModuleShape {
        &self.shape
    }

    /// The flattening `F_b`.
    pub fn flattened(&self, b: usize) -> &CMatrix {
        &self.blocks[b]
    }

    pub fn flattenings(&self) -> &[CMatrix] {
        &self.blocks
    }

    pub fn entry(&self, i: usize) -> AlgebraElement {
        let blocks = self
            .shape
            .algebra
            .block_dims()
            .iter()
            .zip(&self.blocks)
            .map(|(&d, m)| m.view((0, i * d), (d, d)).into_owned())
            .collect();
        AlgebraElement::from_blocks_unchecked(self.shape.algebra.clone(), blocks)
    }

    pub fn entries(&self) -> Vec<AlgebraElement> {
        (0..self.shape.rank).map(|i| self.entry(i)).collect()
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&CMatrix, &CMatrix) -> CMatrix) -> Result<Self> {
        self.shape.check(&other.shape)?;
        let blocks = self.blocks.iter().zip(&other.blocks).map(|(x, y)| f(x, y)).collect();
        Ok(Self {
            shape: self.shape.clone(),
            blocks,
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |x, y| x + y)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |x, y| x - y)
    }

    /// Multiplication by a complex scalar.
    pub fn scale(&self, c: Complex64) -> Self {
        Self {
            shape: self.shape.clone(),
            blocks: self.blocks.iter().map(|m| m * c).collect(),
        }
    }

    /// Left module action `a·f`.
    pub fn left_mul(&self, a: &AlgebraElement) -> Result<Self> {
        self.shape.algebra.check(a.shape())?;
        let blocks = self.blocks.iter().zip(a.blocks()).map(|(m, x)| x * m).collect();
        Ok(Self {
            shape: self.shape.clone(),
            blocks,
        })
    }

    /// Left action by a central element.
    pub fn central_mul(&self, c: &CentralElement) -> Result<Self> {
        self.shape.algebra.check(c.shape())?;
        let blocks = self.blocks.iter().zip(c.scalars()).map(|(m, &s)| m * s).collect();
        Ok(Self {
            shape: self.shape.clone(),
            blocks,
        })
    }

    /// `⟨self, g⟩ = Σ_i f_i g_i*`.
    pub fn inner(&self, g: &Self) -> Result<AlgebraElement> {
        self.shape.check(&g.shape)?;
        let blocks = self
            .blocks
            .iter()
            .zip(&g.blocks)
            .map(|(f, g)| f * g.adjoint())
            .collect();
        Ok(AlgebraElement::from_blocks_unchecked(
            self.shape.algebra.clone(),
            blocks,
        ))
    }

    /// `|f|² = ⟨f, f⟩`, computed directly.
    pub fn square_modulus(&self) -> AlgebraElement {
        let blocks = self
            .blocks
            .iter()
            .map(|f| linalg::hermitian_part(&(f * f.adjoint())))
            .collect();
        AlgebraElement::from_blocks_unchecked(self.shape.algebra.clone(), blocks)
    }

    /// `‖f‖ = ‖⟨f, f⟩‖^{1/2}`, which is the largest singular value of the
    /// flattenings.
    pub fn norm(&self) -> f64 {
        self.blocks.iter().map(linalg::spectral_norm).fold(0.0, f64::max)
    }
}

/// An adjointable `A`-linear operator on `Aⁿ`, stored as its per-block
/// right-multiplication matrices.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "OperatorRepr", into = "OperatorRepr")]
pub struct ModuleOperator {
    shape: ModuleShape,
    blocks: Vec<CMatrix>,
}

#[derive(Serialize, Deserialize)]
pub(crate) struct OperatorRepr {
    algebra: AlgebraShape,
    rank: usize,
    block_mats: Vec<Vec<Vec<Complex64>>>,
}

impl TryFrom<OperatorRepr> for ModuleOperator {
    type Error = Error;
    fn try_from(r: OperatorRepr) -> Result<Self> {
        let shape = ModuleShape::new(r.algebra, r.rank)?;
        if r.block_mats.len() != shape.algebra.num_blocks() {
            return Err(Error::LengthMismatch {
                expected: shape.algebra.num_blocks(),
                actual: r.block_mats.len(),
            });
        }
        let blocks = r
            .block_mats
            .iter()
            .zip(shape.flat_dims())
            .map(|(rows, (_, n))| matrix_from_rows(rows, n, n))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { shape, blocks })
    }
}

impl From<ModuleOperator> for OperatorRepr {
    fn from(t: ModuleOperator) -> Self {
        OperatorRepr {
            block_mats: t.blocks.iter().map(matrix_to_rows).collect(),
            algebra: t.shape.algebra,
            rank: t.shape.rank,
        }
    }
}

impl ModuleOperator {
    pub fn from_block_mats(shape: &ModuleShape, blocks: Vec<CMatrix>) -> Result<Self> {
        if blocks.len() != shape.algebra.num_blocks() {
            return Err(Error::LengthMismatch {
                expected: shape.algebra.num_blocks(),
                actual: blocks.len(),
            });
        }
        for (m, (_, n)) in blocks.iter().zip(shape.flat_dims()) {
            if m.nrows() != n || m.ncols() != n {
                return Err(Error::ShapeMismatch {
                    expected: format!("{n}x{n} block matrix"),
                    actual: format!("{}x{} block matrix", m.nrows(), m.ncols()),
                });
            }
        }
        Ok(Self {
            shape: shape.clone(),
            blocks,
        })
    }

    pub(crate) fn from_block_mats_unchecked(shape: &ModuleShape, blocks: Vec<CMatrix>) -> Self {
        Self {
            shape: shape.clone(),
            blocks,
        }
    }

    pub fn identity(shape: &ModuleShape) -> Self {
        Self::scalar(shape, linalg::ONE)
    }

    pub fn zero(shape: &ModuleShape) -> Self {
        Self::scalar(shape, ZERO)
    }

    pub fn scalar(shape: &ModuleShape, c: Complex64) -> Self {
        let blocks = shape.flat_dims().map(|(_, n)| linalg::identity(n) * c).collect();
        Self {
            shape: shape.clone(),
            blocks,
        }
    }

    /// The operator `f ↦ c·f` for a central element `c`.
    pub fn central(shape: &ModuleShape, c: &CentralElement) -> Result<Self> {
        shape.algebra.check(c.shape())?;
        let blocks = shape
            .flat_dims()
            .zip(c.scalars())
            .map(|((_, n), &s)| linalg::identity(n) * s)
            .collect();
        Ok(Self {
            shape: shape.clone(),
            blocks,
        })
    }

    pub fn shape(&self) -> &ModuleShape {
        &self.shape
    }

    /// The matrix `R_b`.
    pub fn block_mat(&self, b: usize) -> &CMatrix {
        &self.blocks[b]
    }

    pub fn block_mats(&self) -> &[CMatrix] {
        &self.blocks
    }

    pub fn apply(&self, f: &ModuleVector) -> Result<ModuleVector> {
        self.shape.check(&f.shape)?;
        let blocks = f.blocks.iter().zip(&self.blocks).map(|(x, r)| x * r).collect();
        Ok(ModuleVector {
            shape: self.shape.clone(),
            blocks,
        })
    }

    /// `self ∘ inner`: apply `inner` first, then `self`. In matrices this is
    /// `R_inner · R_self`.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        self.shape.check(&inner.shape)?;
        let blocks = self.blocks.iter().zip(&inner.blocks).map(|(t, u)| u * t).collect();
        Ok(Self {
            shape: self.shape.clone(),
            blocks,
        })
    }

    pub fn adjoint(&self) -> Self {
        self.map(|m| m.adjoint())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.shape.check(&other.shape)?;
        let blocks = self.blocks.iter().zip(&other.blocks).map(|(x, y)| x + y).collect();
        Ok(Self {
            shape: self.shape.clone(),
            blocks,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.shape.check(&other.shape)?;
        let blocks = self.blocks.iter().zip(&other.blocks).map(|(x, y)| x - y).collect();
        Ok(Self {
            shape: self.shape.clone(),
            blocks,
        })
    }

    pub fn scale(&self, c: Complex64) -> Self {
        self.map(|m| m * c)
    }

    pub(crate) fn map(&self, f: impl Fn(&CMatrix) -> CMatrix) -> Self {
        Self {
            shape: self.shape.clone(),
            blocks: self.blocks.iter().map(f).collect(),
        }
    }

    /// `(T + T*) / 2`.
    pub fn hermitian_part(&self) -> Self {
        self.map(linalg::hermitian_part)
    }

    /// Operator norm: the largest singular value over blocks.
    pub fn norm(&self) -> f64 {
        self.blocks.iter().map(linalg::spectral_norm).fold(0.0, f64::max)
    }

    pub fn min_singular_value(&self) -> f64 {
        self.blocks
            .iter()
            .map(linalg::min_singular_value)
            .fold(f64::INFINITY, f64::min)
    }

    /// `‖T − T*‖`.
    pub fn self_adjoint_defect(&self) -> f64 {
        self.blocks.iter().map(linalg::hermitian_defect).fold(0.0, f64::max)
    }

    pub fn is_self_adjoint(&self, tol: f64) -> bool {
        self.self_adjoint_defect() <= tol
    }

    /// Smallest and largest eigenvalue of the Hermitian part over all blocks.
    pub fn spectral_bounds(&self) -> (f64, f64) {
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for m in &self.blocks {
            let ev = linalg::hermitian_eigenvalues(m);
            lo = lo.min(ev[0]);
            hi = hi.max(*ev.last().unwrap());
        }
        (lo, hi)
    }

    /// Eigenvalues of the Hermitian part, ascending within each block,
    /// concatenated in block order.
    pub fn spectrum_hermitian(&self) -> Vec<f64> {
        self.blocks.iter().flat_map(linalg::hermitian_eigenvalues).collect()
    }

    /// `T ≥ 0`: every `R_b` Hermitian within `tol` with eigenvalues `≥ −tol`.
    pub fn is_positive(&self, tol: f64) -> bool {
        self.is_self_adjoint(tol) && self.spectral_bounds().0 >= -tol
    }

    /// `T ≤ 0`.
    pub fn is_negative(&self, tol: f64) -> bool {
        self.is_self_adjoint(tol) && self.spectral_bounds().1 <= tol
    }

    pub fn is_invertible(&self, tol: f64) -> bool {
        self.min_singular_value() > tol
    }

    /// `m·I ≤ T ≤ M·I`: self-adjoint with every block eigenvalue in
    /// `[m − tol, M + tol]`.
    pub fn is_bracketed(&self, lower: f64, upper: f64, tol: f64) -> bool {
        if !self.is_self_adjoint(tol) {
            return false;
        }
        let (lo, hi) = self.spectral_bounds();
        lo >= lower - tol && hi <= upper + tol
    }

    pub fn inverse(&self) -> Result<Self> {
        let min_sv = self.min_singular_value();
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

    /// Applies `g` to the spectrum of the Hermitian part (functional calculus).
    pub fn hermitian_function(&self, g: impl Fn(f64) -> f64 + Copy) -> Self {
        self.map(|m| linalg::hermitian_function(m, g))
    }

    /// Loewner comparison `m⟨f,f⟩ ≤ ⟨Tf,f⟩ ≤ M⟨f,f⟩` at a single vector,
    /// returned as `(lower_holds, upper_holds)`.
    pub fn sandwich_at(&self, f: &ModuleVector, lower: f64, upper: f64, tol: f64) -> Result<(bool, bool)> {
        let tff = self.apply(f)?.inner(f)?;
        let ff = f.square_modulus();
        let lo = ff.scale(Complex64::new(lower, 0.0)).loewner_leq(&tff, tol)?;
        let hi = tff.loewner_leq(&ff.scale(Complex64::new(upper, 0.0)), tol)?;
        Ok((lo, hi))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn shape(d: &[usize], n: usize) -> ModuleShape {
        ModuleShape::new(AlgebraShape::new(d.to_vec()).unwrap(), n).unwrap()
    }

    #[test]
    fn complex_line_inner_product() {
        let s = shape(&[1], 1);
        let f = ModuleVector::from_entries(&s, &[AlgebraElement::scalar(s.algebra(), c(2.0, 0.0))]).unwrap();
        let g = ModuleVector::from_entries(&s, &[AlgebraElement::scalar(s.algebra(), c(3.0, 0.0))]).unwrap();
        assert_eq!(f.inner(&g).unwrap().block(0)[(0, 0)], c(6.0, 0.0));
        let gi = g.scale(c(0.0, 1.0));
        // conjugate-linear in the second slot
        assert_eq!(f.inner(&gi).unwrap().block(0)[(0, 0)], c(0.0, -6.0));
    }

    #[test]
    fn generator_has_unit_inner_product() {
        let s = shape(&[2, 1], 3);
        let e = ModuleVector::generator(&s, 1).unwrap();
        assert_eq!(e.inner(&e).unwrap(), AlgebraElement::identity(s.algebra()));
        assert_eq!(e.norm(), 1.0);
        assert_eq!(ModuleVector::zero(&s).norm(), 0.0);
        assert!(ModuleVector::generator(&s, 3).is_err());
    }

    #[test]
    fn entries_roundtrip() {
        let s = shape(&[2, 1], 2);
        let units = AlgebraElement::matrix_units(s.algebra());
        let entries = vec![units[1].clone(), units[4].scale(c(0.0, 2.0))];
        let v = ModuleVector::from_entries(&s, &entries).unwrap();
        assert_eq!(v.entries(), entries);
        assert_eq!(ModuleVector::spanning_set(&s).len(), 2 * 5);
    }

    #[test]
    fn operator_basics() {
        let s = shape(&[2], 1);
        let id = ModuleOperator::identity(&s);
        assert!(id.is_positive(1e-12));
        assert!(id.is_self_adjoint(0.0));
        assert!(id.is_invertible(1e-12));
        assert!((id.norm() - 1.0).abs() < 1e-15);
        let f = ModuleVector::generator(&s, 0).unwrap().scale(c(0.5, 1.0));
        assert_eq!(id.apply(&f).unwrap(), f);

        let nil = CMatrix::from_fn(2, 2, |i, j| if i == 0 && j == 1 { c(1.0, 0.0) } else { c(0.0, 0.0) });
        let t = ModuleOperator::from_block_mats(&s, vec![nil]).unwrap();
        assert!(!t.is_self_adjoint(1e-10));
        assert!(!t.is_invertible(1e-10));
        assert!(matches!(t.inverse(), Err(Error::Singular { .. })));
    }

    #[test]
    fn operator_shape_validation() {
        let s = shape(&[2], 2);
        assert!(ModuleOperator::from_block_mats(&s, vec![CMatrix::zeros(2, 2)]).is_err());
        let other = shape(&[1], 2);
        let f = ModuleVector::zero(&other);
        assert!(matches!(
            ModuleOperator::identity(&s).apply(&f),
            Err(Error::ShapeMismatch { .. })
        ));
    }

    #[test]
    fn composition_order() {
        let s = shape(&[1], 2);
        // T swaps the two slots, U scales slot 0 by 2.
        let swap = CMatrix::from_fn(2, 2, |i, j| if i != j { c(1.0, 0.0) } else { c(0.0, 0.0) });
        let dbl = CMatrix::from_fn(2, 2, |i, j| match (i, j) {
            (0, 0) => c(2.0, 0.0),
            (1, 1) => c(1.0, 0.0),
            _ => c(0.0, 0.0),
        });
        let t = ModuleOperator::from_block_mats(&s, vec![swap]).unwrap();
        let u = ModuleOperator::from_block_mats(&s, vec![dbl]).unwrap();
        let e0 = ModuleVector::generator(&s, 0).unwrap();
        let tu = t.compose(&u).unwrap();
        // U e0 = 2 e0, then T moves it to slot 1
        let expected = ModuleVector::generator(&s, 1).unwrap().scale(c(2.0, 0.0));
        assert_eq!(tu.apply(&e0).unwrap(), expected);
        assert_eq!(tu.apply(&e0).unwrap(), t.apply(&u.apply(&e0).unwrap()).unwrap());
    }

    #[test]
    fn bracket_and_sandwich() {
        let s = shape(&[1], 2);
        let d = CMatrix::from_fn(2, 2, |i, j| if i == j { c([1.0, 3.0][i], 0.0) } else { c(0.0, 0.0) });
        let t = ModuleOperator::from_block_mats(&s, vec![d]).unwrap();
        assert!(t.is_bracketed(1.0, 3.0, 1e-12));
        assert!(!t.is_bracketed(1.5, 3.0, 1e-12));
        let e1 = ModuleVector::generator(&s, 0).unwrap();
        assert_eq!(t.sandwich_at(&e1, 1.0, 3.0, 1e-12).unwrap(), (true, true));
        assert_eq!(t.sandwich_at(&e1, 1.1, 3.0, 1e-12).unwrap(), (false, true));
    }

    #[test]
    fn json_roundtrip_operator() {
        let s = shape(&[1, 2], 2);
        let t = ModuleOperator::scalar(&s, c(0.1, -0.3));
        let text = serde_json::to_string(&t).unwrap();
        assert!(text.starts_with(r#"{"algebra":{"block_dims":[1,2]},"rank":2,"block_mats":"#));
        let back: ModuleOperator = serde_json::from_str(&text).unwrap();
        assert_eq!(back, t);
        let v = ModuleVector::generator(&s, 1).unwrap();
        let back: ModuleVector = serde_json::from_str(&serde_json::to_string(&v).unwrap()).unwrap();
        assert_eq!(back, v);
    }
}
