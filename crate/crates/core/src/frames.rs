//! Frames and Bessel sequences in `Aⁿ`.
//!
//! A finite system `{ψ_j}` is a frame when there are `0 < C ≤ D` with
//!
//! ```text
//! C⟨f,f⟩ ≤ Σ_j ⟨f,ψ_j⟩⟨ψ_j,f⟩ ≤ D⟨f,f⟩      for all f,
//! ```
//!
//! the inequalities taken in the Loewner order of `A`. With `P_{j,b}` the
//! flattening of `ψ_j` in block `b`, the middle term is `F_b Q_b F_b*` where
//! `Q_b = Σ_j P_{j,b}* P_{j,b}` is the matrix of the frame operator
//! `Sf = Σ_j ⟨f,ψ_j⟩ψ_j`. Testing the inequality against rank-one
//! flattenings shows it holds exactly when `C ≤ λ_min(Q_b)` and
//! `λ_max(Q_b) ≤ D` in every block, which is how bounds are computed here.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::algebra::{AlgebraElement, AlgebraShape};
use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix};
use crate::module_space::{ModuleOperator, ModuleShape, ModuleVector};
use crate::random;

/// Frame bounds `(C, D)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FrameBounds {
    pub lower: f64,
    pub upper: f64,
}

impl FrameBounds {
    pub fn condition_number(&self) -> f64 {
        self.upper / self.lower
    }
}

/// A finite family of vectors in `Aⁿ` together with its frame operator.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "FrameRepr", into = "FrameRepr")]
pub struct FrameSystem {
    shape: ModuleShape,
    vectors: Vec<ModuleVector>,
    frame_op: ModuleOperator,
}

#[derive(Serialize, Deserialize)]
struct FrameRepr {
    algebra: AlgebraShape,
    rank: usize,
    vectors: Vec<ModuleVector>,
}

impl TryFrom<FrameRepr> for FrameSystem {
    type Error = Error;
    fn try_from(r: FrameRepr) -> Result<Self> {
        let shape = ModuleShape::new(r.algebra, r.rank)?;
        FrameSystem::new(&shape, r.vectors)
    }
}

impl From<FrameSystem> for FrameRepr {
    fn from(f: FrameSystem) -> Self {
        FrameRepr {
            algebra: f.shape.algebra().clone(),
            rank: f.shape.rank(),
            vectors: f.vectors,
        }
    }
}

/// `Σ_j X_j* Y_j` accumulated left to right, the building block of every
/// frame-type operator. With `weights`, term `j` in block `b` is scaled by
/// `weights[j][b]`.
pub(crate) fn gram_sum(
    shape: &ModuleShape,
    analysis: &[ModuleVector],
    synthesis: &[ModuleVector],
    weights: Option<&[Vec<Complex64>]>,
) -> Vec<CMatrix> {
    shape
        .flat_dims()
        .enumerate()
        .map(|(b, (_, n))| {
            let mut acc = CMatrix::zeros(n, n);
            for (j, (x, y)) in analysis.iter().zip(synthesis).enumerate() {
                let term = x.flattened(b).adjoint() * y.flattened(b);
                match weights {
                    Some(w) => acc += term * w[j][b],
                    None => acc += term,
                }
            }
            acc
        })
        .collect()
}

impl FrameSystem {
    pub fn new(shape: &ModuleShape, vectors: Vec<ModuleVector>) -> Result<Self> {
        if vectors.is_empty() {
            return Err(Error::InvalidParameter(
                "a frame system needs at least one vector".into(),
            ));
        }
        for v in &vectors {
            shape.check(v.shape())?;
        }
        let blocks = gram_sum(shape, &vectors, &vectors, None)
            .iter()
            .map(linalg::hermitian_part)
            .collect();
        let frame_op = ModuleOperator::from_block_mats_unchecked(shape, blocks);
        Ok(Self {
            shape: shape.clone(),
            vectors,
            frame_op,
        })
    }

    /// `{e_1, …, e_n}`, a Parseval frame.
    pub fn standard_basis(shape: &ModuleShape) -> Self {
        let vectors = (0..shape.rank())
            .map(|i| ModuleVector::generator(shape, i).expect("slot in range"))
            .collect();
        Self::new(shape, vectors).expect("nonempty")
    }

    pub fn shape(&self) -> &ModuleShape {
        &self.shape
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn vectors(&self) -> &[ModuleVector] {
        &self.vectors
    }

    pub fn vector(&self, j: usize) -> &ModuleVector {
        &self.vectors[j]
    }

    /// The frame operator `S`; its block matrices are the `Q_b`.
    pub fn frame_operator(&self) -> &ModuleOperator {
        &self.frame_op
    }

    /// `coeffs[j] = ⟨f, ψ_j⟩`.
    pub fn analysis(&self, f: &ModuleVector) -> Result<CoefficientSequence> {
        self.shape.check(f.shape())?;
        let coeffs = self.vectors.iter().map(|psi| f.inner(psi)).collect::<Result<_>>()?;
        Ok(CoefficientSequence {
            shape: self.shape.algebra().clone(),
            coeffs,
        })
    }

    /// `Σ_j c_j·ψ_j`.
    pub fn synthesis(&self, c: &CoefficientSequence) -> Result<ModuleVector> {
        self.shape.algebra().check(&c.shape)?;
        if c.coeffs.len() != self.len() {
            return Err(Error::LengthMismatch {
                expected: self.len(),
                actual: c.coeffs.len(),
            });
        }
        let mut acc = ModuleVector::zero(&self.shape);
        for (a, psi) in c.coeffs.iter().zip(&self.vectors) {
            acc = acc.add(&psi.left_mul(a)?)?;
        }
        Ok(acc)
    }

    /// Optimal frame bounds: the extreme block eigenvalues of `S`.
    pub fn optimal_bounds(&self) -> FrameBounds {
        let (lower, upper) = self.frame_op.spectral_bounds();
        FrameBounds {
            lower: lower.max(0.0),
            upper,
        }
    }

    /// Frame test with a scale-relative threshold: the optimal lower bound
    /// must exceed `rel_tol · D`.
    pub fn is_frame(&self, rel_tol: f64) -> bool {
        let b = self.optimal_bounds();
        b.lower > rel_tol * b.upper
    }

    /// Finite systems are always Bessel; this is their optimal Bessel bound.
    pub fn bessel_bound(&self) -> f64 {
        self.optimal_bounds().upper
    }

    pub fn is_bessel(&self) -> bool {
        self.bessel_bound().is_finite()
    }

    /// `{Vψ_j}` for an operator `V`.
    pub fn map_vectors(&self, op: &ModuleOperator) -> Result<Self> {
        let vectors = self.vectors.iter().map(|v| op.apply(v)).collect::<Result<_>>()?;
        Self::new(&self.shape, vectors)
    }

    /// `{t·ψ_j}` for a real `t`; bounds scale by `t²`.
    pub fn scaled(&self, t: f64) -> Self {
        let vectors = self.vectors.iter().map(|v| v.scale(Complex64::new(t, 0.0))).collect();
        Self::new(&self.shape, vectors).expect("same shape")
    }

    /// Reorders the vectors: position `j` of the result holds `ψ_{order[j]}`.
    pub fn permuted(&self, order: &[usize]) -> Result<Self> {
        let mut seen = vec![false; self.len()];
        for &j in order {
            if j >= self.len() || std::mem::replace(&mut seen[j], true) {
                return Err(Error::InvalidParameter(format!("{order:?} is not a permutation")));
            }
        }
        if order.len() != self.len() {
            return Err(Error::LengthMismatch {
                expected: self.len(),
                actual: order.len(),
            });
        }
        Self::new(&self.shape, order.iter().map(|&j| self.vectors[j].clone()).collect())
    }

    /// Transforms the system so that its frame operator becomes `target`
    /// (which must be self-adjoint and positive definite): every vector is
    /// right-multiplied by `Q^{-1/2} T^{1/2}`.
    pub fn with_frame_operator(&self, target: &ModuleOperator) -> Result<Self> {
        if !self.is_frame(crate::DEFAULT_TOL) {
            return Err(Error::NotAFrame {
                lower: self.optimal_bounds().lower,
            });
        }
        let q_inv_sqrt = self.frame_op.hermitian_function(|x| 1.0 / x.sqrt());
        if !target.is_positive(crate::DEFAULT_TOL * (1.0 + target.norm())) {
            return Err(Error::NotPositive {
                min_eigenvalue: target.spectral_bounds().0,
            });
        }
        let t_sqrt = target.hermitian_function(|x| x.max(0.0).sqrt());
        // right action: apply Q^{-1/2} first, then T^{1/2}
        self.map_vectors(&t_sqrt.compose(&q_inv_sqrt)?)
    }

    /// `{S⁻¹ψ_j}`.
    pub fn canonical_dual(&self) -> Result<Self> {
        if !self.is_frame(crate::DEFAULT_TOL) {
            return Err(Error::NotAFrame {
                lower: self.optimal_bounds().lower,
            });
        }
        self.map_vectors(&self.frame_op.inverse()?)
    }

    /// `Σ_j ⟨f, g_j⟩ψ_j` with `g` the second system.
    pub fn reconstruct_with(&self, dual: &Self, f: &ModuleVector) -> Result<ModuleVector> {
        check_pair(self, dual)?;
        let mut acc = ModuleVector::zero(&self.shape);
        for (psi, g) in self.vectors.iter().zip(&dual.vectors) {
            acc = acc.add(&psi.left_mul(&f.inner(g)?)?)?;
        }
        Ok(acc)
    }

    /// Loewner comparison of the frame inequality at a single vector.
    pub fn inequality_at(&self, f: &ModuleVector, lower: f64, upper: f64, tol: f64) -> Result<(bool, bool)> {
        self.frame_op.sandwich_at(f, lower, upper, tol)
    }

    /// Sampled check of the norm form `C‖f‖² ≤ ‖Σ⟨f,ψ_j⟩⟨ψ_j,f⟩‖ ≤ D‖f‖²`
    /// at the optimal bounds.
    pub fn norm_characterization_check(
        &self,
        samples: usize,
        seed: u64,
        tol: f64,
    ) -> Result<NormCharacterizationReport> {
        let b = self.optimal_bounds();
        norm_characterization(&self.frame_op, b.lower, b.upper, samples, seed, tol)
    }
}

fn check_pair(f: &FrameSystem, g: &FrameSystem) -> Result<()> {
    f.shape.check(&g.shape)?;
    if f.len() != g.len() {
        return Err(Error::LengthMismatch {
            expected: f.len(),
            actual: g.len(),
        });
    }
    Ok(())
}

/// Largest `‖x − Σ_j ⟨x, g_j⟩f_j‖` over the spanning set `{a·e_i}` of
/// matrix-unit multiples of generators. Both sides are `ℂ`-linear in `x`,
/// so a zero residual there means the identity holds on all of `H`.
pub fn duality_residual(f: &FrameSystem, g: &FrameSystem) -> Result<f64> {
    check_pair(f, g)?;
    let mut worst = 0.0f64;
    for x in ModuleVector::spanning_set(&f.shape) {
        let r = f.reconstruct_with(g, &x)?.sub(&x)?.norm();
        worst = worst.max(r);
    }
    Ok(worst)
}

/// `g` is a dual of `f`: `x = Σ_j ⟨x, g_j⟩f_j` for all `x`, up to `tol`.
pub fn is_dual_pair(f: &FrameSystem, g: &FrameSystem, tol: f64) -> Result<bool> {
    Ok(duality_residual(f, g)? <= tol)
}

/// Coefficients in the finite sequence module `A^N`.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientSequence {
    shape: AlgebraShape,
    coeffs: Vec<AlgebraElement>,
}

impl CoefficientSequence {
    pub fn new(shape: AlgebraShape, coeffs: Vec<AlgebraElement>) -> Result<Self> {
        for c in &coeffs {
            shape.check(c.shape())?;
        }
        Ok(Self { shape, coeffs })
    }

    /// `c_j = δ_{jk}·a`.
    pub fn single(shape: &AlgebraShape, len: usize, k: usize, a: AlgebraElement) -> Result<Self> {
        let mut coeffs = vec![AlgebraElement::zero(shape); len];
        *coeffs
            .get_mut(k)
            .ok_or_else(|| Error::InvalidParameter(format!("index {k} out of range {len}")))? = a;
        Self::new(shape.clone(), coeffs)
    }

    pub fn coeffs(&self) -> &[AlgebraElement] {
        &self.coeffs
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `Σ_j a_j b_j*`, the inner product matching the left-module
    /// convention of `Aⁿ` (synthesis is then the adjoint of analysis).
    pub fn inner(&self, other: &Self) -> Result<AlgebraElement> {
        self.shape.check(&other.shape)?;
        if self.len() != other.len() {
            return Err(Error::LengthMismatch {
                expected: self.len(),
                actual: other.len(),
            });
        }
        let mut acc = AlgebraElement::zero(&self.shape);
        for (a, b) in self.coeffs.iter().zip(&other.coeffs) {
            acc = acc.add(&a.mul(&b.adjoint())?)?;
        }
        Ok(acc)
    }
}

/// Outcome of a sampled norm-inequality check. Margins are normalized by
/// `‖f‖²`: lower margin `‖⟨Xf,f⟩‖/‖f‖² − C`, upper margin
/// `D − ‖⟨Xf,f⟩‖/‖f‖²`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NormCharacterizationReport {
    pub lower: f64,
    pub upper: f64,
    pub samples: usize,
    pub worst_lower_margin: f64,
    pub worst_upper_margin: f64,
    pub witness_lower_margin: f64,
    pub witness_upper_margin: f64,
    /// Smallest margin of either kind over the witness set; near zero when
    /// the bounds are attained.
    pub tightest_witness_margin: f64,
    pub tol: f64,
    pub pass: bool,
}

/// Vectors on which Loewner and norm inequalities for `op` are tested:
/// every matrix-unit multiple of a generator, plus for every block
/// eigenvector `v` of the Hermitian part of `R_b` the rank-one vector whose
/// flattening has first row `v*` (these attain the extreme eigenvalues).
pub fn witness_vectors(op: &ModuleOperator) -> Vec<ModuleVector> {
    let shape = op.shape();
    let mut out = ModuleVector::spanning_set(shape);
    for (b, m) in op.block_mats().iter().enumerate() {
        let (_, vecs) = linalg::hermitian_eigen(m);
        for c in 0..vecs.ncols() {
            let mut blocks: Vec<CMatrix> = shape.flat_dims().map(|(r, n)| CMatrix::zeros(r, n)).collect();
            for i in 0..vecs.nrows() {
                blocks[b][(0, i)] = vecs[(i, c)].conj();
            }
            out.push(ModuleVector::from_flattened_unchecked(shape, blocks));
        }
    }
    out
}

fn normalized_quadratic_norm(op: &ModuleOperator, f: &ModuleVector) -> Result<Option<f64>> {
    let nf = f.norm();
    if nf == 0.0 {
        return Ok(None);
    }
    Ok(Some(op.apply(f)?.inner(f)?.norm() / (nf * nf)))
}

/// Sampled and witness-based check of `C‖f‖² ≤ ‖⟨Xf,f⟩‖ ≤ D‖f‖²`.
pub fn norm_characterization(
    op: &ModuleOperator,
    lower: f64,
    upper: f64,
    samples: usize,
    seed: u64,
    tol: f64,
) -> Result<NormCharacterizationReport> {
    if samples == 0 {
        return Err(Error::InvalidParameter("samples must be at least 1".into()));
    }
    let mut rng = random::seeded(seed);
    let mut worst_lo = f64::INFINITY;
    let mut worst_hi = f64::INFINITY;
    for _ in 0..samples {
        let f = random::unit_vector(op.shape(), &mut rng);
        if let Some(q) = normalized_quadratic_norm(op, &f)? {
            worst_lo = worst_lo.min(q - lower);
            worst_hi = worst_hi.min(upper - q);
        }
    }
    let mut wit_lo = f64::INFINITY;
    let mut wit_hi = f64::INFINITY;
    for f in witness_vectors(op) {
        if let Some(q) = normalized_quadratic_norm(op, &f)? {
            wit_lo = wit_lo.min(q - lower);
            wit_hi = wit_hi.min(upper - q);
        }
    }
    let pass = worst_lo >= -tol && worst_hi >= -tol && wit_lo >= -tol && wit_hi >= -tol;
    Ok(NormCharacterizationReport {
        lower,
        upper,
        samples,
        worst_lower_margin: worst_lo,
        worst_upper_margin: worst_hi,
        witness_lower_margin: wit_lo,
        witness_upper_margin: wit_hi,
        tightest_witness_margin: wit_lo.min(wit_hi),
        tol,
        pass,
    })
}

/// Result of testing `m⟨f,f⟩ ≤ ⟨Xf,f⟩ ≤ M⟨f,f⟩` on the witness set.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SandwichCheck {
    pub lower_holds: bool,
    pub upper_holds: bool,
    pub lower_violations: usize,
    pub upper_violations: usize,
    pub witnesses: usize,
}

pub fn sandwich_on_witnesses(op: &ModuleOperator, lower: f64, upper: f64, tol: f64) -> Result<SandwichCheck> {
    let witnesses = witness_vectors(op);
    let mut lo_bad = 0;
    let mut hi_bad = 0;
    for f in &witnesses {
        let (lo, hi) = op.sandwich_at(f, lower, upper, tol)?;
        lo_bad += usize::from(!lo);
        hi_bad += usize::from(!hi);
    }
    Ok(SandwichCheck {
        lower_holds: lo_bad == 0,
        upper_holds: hi_bad == 0,
        lower_violations: lo_bad,
        upper_violations: hi_bad,
        witnesses: witnesses.len(),
    })
}
