//! Frame multipliers with central symbols, controlled multipliers and
//! weighted frames.
//!
//! The multiplier `M_{m,F,G} f = Σ_j m_j ⟨f, φ_j⟩ γ_j` (analysis by `F`,
//! synthesis by `G`) has block matrices `Σ_j m_j^{(b)} P_{j,b}^{F*} P_{j,b}^{G}`.
//! Because every `m_j` lies in the center, it acts on block `b` as the
//! scalar `m_j^{(b)}` and commutes out of the inner products.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::algebra::{AlgebraShape, CentralElement};
use crate::controlled::{is_controlled_frame, Controller, CONTROLLED_TOL};
use crate::error::{Error, Result};
use crate::frames::{self, gram_sum, FrameBounds, FrameSystem};
use crate::linalg;
use crate::module_space::{ModuleOperator, ModuleVector};
use crate::{random, DEFAULT_TOL};

/// A finite sequence of central elements, used as multiplier symbol or as
/// weights.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "SymbolRepr", into = "SymbolRepr")]
pub struct Symbol {
    shape: AlgebraShape,
    values: Vec<CentralElement>,
}

#[derive(Serialize, Deserialize)]
struct SymbolRepr {
    algebra: AlgebraShape,
    values: Vec<Vec<Complex64>>,
}

impl TryFrom<SymbolRepr> for Symbol {
    type Error = Error;
    fn try_from(r: SymbolRepr) -> Result<Self> {
        let values = r
            .values
            .into_iter()
            .map(|s| CentralElement::new(r.algebra.clone(), s))
            .collect::<Result<_>>()?;
        Symbol::new(r.algebra, values)
    }
}

impl From<Symbol> for SymbolRepr {
    fn from(s: Symbol) -> Self {
        SymbolRepr {
            values: s.values.iter().map(|v| v.scalars().to_vec()).collect(),
            algebra: s.shape,
        }
    }
}

impl Symbol {
    pub fn new(shape: AlgebraShape, values: Vec<CentralElement>) -> Result<Self> {
        for v in &values {
            shape.check(v.shape())?;
        }
        Ok(Self { shape, values })
    }

    /// `m_j = value` in every block, for `len` indices.
    pub fn constant(shape: &AlgebraShape, len: usize, value: f64) -> Self {
        Self {
            shape: shape.clone(),
            values: vec![CentralElement::real(shape, value); len],
        }
    }

    /// One real scalar per index, the same in every block.
    pub fn from_reals(shape: &AlgebraShape, values: &[f64]) -> Self {
        Self {
            shape: shape.clone(),
            values: values.iter().map(|&v| CentralElement::real(shape, v)).collect(),
        }
    }

    pub fn shape(&self) -> &AlgebraShape {
        &self.shape
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[CentralElement] {
        &self.values
    }

    pub fn value(&self, j: usize) -> &CentralElement {
        &self.values[j]
    }

    /// `max_j ‖m_j‖`.
    pub fn sup_norm(&self) -> f64 {
        self.values.iter().map(CentralElement::norm).fold(0.0, f64::max)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_len(other.len())?;
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a.add(b))
            .collect::<Result<_>>()?;
        Self::new(self.shape.clone(), values)
    }

    pub fn scale(&self, t: Complex64) -> Self {
        Self {
            shape: self.shape.clone(),
            values: self.values.iter().map(|v| v.scale(t)).collect(),
        }
    }

    /// Positive square roots.
    pub fn sqrt(&self, tol: f64) -> Result<Self> {
        let values = self
            .values
            .iter()
            .map(|v| v.sqrt_positive(tol))
            .collect::<Result<_>>()?;
        Ok(Self {
            shape: self.shape.clone(),
            values,
        })
    }

    /// Every value positive: per-block scalars with real part `> tol` and
    /// imaginary part within `tol`.
    pub fn is_positive(&self, tol: f64) -> bool {
        self.values.iter().all(|v| v.is_positive(tol))
    }

    pub fn is_negative(&self, tol: f64) -> bool {
        self.values.iter().all(|v| v.is_negative(tol))
    }

    fn check_len(&self, n: usize) -> Result<()> {
        if self.len() != n {
            return Err(Error::LengthMismatch {
                expected: self.len(),
                actual: n,
            });
        }
        Ok(())
    }

    fn block_scalars(&self) -> Vec<Vec<Complex64>> {
        self.values.iter().map(|v| v.scalars().to_vec()).collect()
    }
}

/// Bounds `0 < a ≤ |m_j^{(b)}| ≤ b`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SemiNormalizedWitness {
    pub a: f64,
    pub b: f64,
}

/// Tightest semi-normalization bounds of `m`; fails when some magnitude is
/// at most `tol`.
pub fn semi_normalized_witness(m: &Symbol, tol: f64) -> Result<SemiNormalizedWitness> {
    if m.is_empty() {
        return Err(Error::InvalidParameter("empty symbol".into()));
    }
    let a = m
        .values
        .iter()
        .map(CentralElement::min_magnitude)
        .fold(f64::INFINITY, f64::min);
    let b = m.sup_norm();
    if a <= tol {
        return Err(Error::NotSemiNormalized { min_magnitude: a });
    }
    Ok(SemiNormalizedWitness { a, b })
}

fn check_systems(m: &Symbol, f: &FrameSystem, g: &FrameSystem) -> Result<()> {
    f.shape().check(g.shape())?;
    f.shape().algebra().check(&m.shape)?;
    m.check_len(f.len())?;
    m.check_len(g.len())
}

/// `M_{m,F,G} f = Σ_j m_j ⟨f, φ_j⟩ γ_j` with `φ ∈ F`, `γ ∈ G`.
pub fn multiplier(m: &Symbol, f: &FrameSystem, g: &FrameSystem) -> Result<ModuleOperator> {
    check_systems(m, f, g)?;
    let blocks = gram_sum(f.shape(), f.vectors(), g.vectors(), Some(&m.block_scalars()));
    Ok(ModuleOperator::from_block_mats_unchecked(f.shape(), blocks))
}

/// The multiplier applied to `x` by direct summation.
pub fn multiplier_sum(m: &Symbol, f: &FrameSystem, g: &FrameSystem, x: &ModuleVector) -> Result<ModuleVector> {
    check_systems(m, f, g)?;
    let mut acc = ModuleVector::zero(f.shape());
    for ((mj, phi), gamma) in m.values.iter().zip(f.vectors()).zip(g.vectors()) {
        acc = acc.add(&gamma.left_mul(&x.inner(phi)?)?.central_mul(mj)?)?;
    }
    Ok(acc)
}

/// `sup_j ‖m_j‖ · sqrt(D_F D_G)`, an upper bound for `‖M_{m,F,G}‖`.
pub fn multiplier_norm_bound(m: &Symbol, f: &FrameSystem, g: &FrameSystem) -> f64 {
    m.sup_norm() * (f.bessel_bound() * g.bessel_bound()).sqrt()
}

/// `f ↦ Σ_j m_j ⟨f, φ_j⟩ Cγ_j`, i.e. `C ∘ M_{m,F,G}`.
pub fn controlled_multiplier(m: &Symbol, f: &FrameSystem, g: &FrameSystem, c: &Controller) -> Result<ModuleOperator> {
    c.operator().compose(&multiplier(m, f, g)?)
}

/// The controlled multiplier applied to `x` by direct summation.
pub fn controlled_multiplier_sum(
    m: &Symbol,
    f: &FrameSystem,
    g: &FrameSystem,
    c: &Controller,
    x: &ModuleVector,
) -> Result<ModuleVector> {
    check_systems(m, f, g)?;
    let mut acc = ModuleVector::zero(f.shape());
    for ((mj, phi), gamma) in m.values.iter().zip(f.vectors()).zip(g.vectors()) {
        let cg = c.operator().apply(gamma)?;
        acc = acc.add(&cg.left_mul(&x.inner(phi)?)?.central_mul(mj)?)?;
    }
    Ok(acc)
}

/// Weighted-frame test: spectral bounds of `Σ_j ω_j P_j* P_j`. The system is
/// a `w`-frame when the lower bound exceeds `tol` times the upper one.
pub fn is_w_frame(frame: &FrameSystem, w: &Symbol, tol: f64) -> Result<(bool, FrameBounds)> {
    if !w.is_positive(tol) {
        return Err(Error::NotPositiveWeights);
    }
    let op = multiplier(w, frame, frame)?.hermitian_part();
    let (lower, upper) = op.spectral_bounds();
    let bounds = FrameBounds {
        lower: lower.max(0.0),
        upper,
    };
    Ok((bounds.lower > tol * bounds.upper, bounds))
}

/// `{ω_j ψ_j}`.
pub fn reweight_frame(frame: &FrameSystem, w: &Symbol) -> Result<FrameSystem> {
    frame.shape().algebra().check(&w.shape)?;
    w.check_len(frame.len())?;
    semi_normalized_witness(w, DEFAULT_TOL)?;
    let vectors = frame
        .vectors()
        .iter()
        .zip(&w.values)
        .map(|(v, wj)| v.central_mul(wj))
        .collect::<Result<_>>()?;
    FrameSystem::new(frame.shape(), vectors)
}

/// `{(ω_j*)⁻¹ ψ̃_j}`, a dual of `{ω_j ψ_j}`. For real weights this is
/// `ω_j⁻¹ ψ̃_j`.
pub fn dual_reweighted(frame: &FrameSystem, w: &Symbol) -> Result<FrameSystem> {
    frame.shape().algebra().check(&w.shape)?;
    w.check_len(frame.len())?;
    semi_normalized_witness(w, DEFAULT_TOL)?;
    let dual = frame.canonical_dual()?;
    let vectors = dual
        .vectors()
        .iter()
        .zip(&w.values)
        .map(|(v, wj)| v.central_mul(&wj.conj().inverse()?))
        .collect::<Result<_>>()?;
    FrameSystem::new(frame.shape(), vectors)
}

/// Reweighting by a semi-normalized sequence keeps the frame property with
/// bounds in `[a²C, b²D]`, and `{(ω_j*)⁻¹ψ̃_j}` is a dual.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReweightingReport {
    pub witness: SemiNormalizedWitness,
    pub original: FrameBounds,
    pub reweighted: FrameBounds,
    /// `[a²C, b²D]`.
    pub bracket: FrameBounds,
    pub within_bracket: bool,
    pub duality_residual: f64,
    pub dual_pair: bool,
    pub tol: f64,
    pub pass: bool,
}

pub fn verify_reweighting(frame: &FrameSystem, w: &Symbol, tol: f64) -> Result<ReweightingReport> {
    let witness = semi_normalized_witness(w, DEFAULT_TOL)?;
    let original = frame.optimal_bounds();
    let reweighted_frame = reweight_frame(frame, w)?;
    let reweighted = reweighted_frame.optimal_bounds();
    let bracket = FrameBounds {
        lower: witness.a * witness.a * original.lower,
        upper: witness.b * witness.b * original.upper,
    };
    let within_bracket = reweighted.lower >= bracket.lower - tol && reweighted.upper <= bracket.upper + tol;
    let dual = dual_reweighted(frame, w)?;
    let duality_residual = frames::duality_residual(&reweighted_frame, &dual)?;
    let dual_pair = duality_residual <= tol.max(DEFAULT_TOL);
    Ok(ReweightingReport {
        witness,
        original,
        reweighted,
        bracket,
        within_bracket,
        duality_residual,
        dual_pair,
        tol,
        pass: within_bracket && dual_pair,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SymbolSign {
    Positive,
    Negative,
}

/// `M_{m,Ψ} = ±S_{√|m|·Ψ}`, and the resulting definiteness.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MultiplierFrameOperatorReport {
    pub sign: SymbolSign,
    /// `‖M_{m,Ψ} ∓ S_{√|m|Ψ}‖ / ‖M_{m,Ψ}‖`.
    pub identity_defect: f64,
    pub self_adjoint: bool,
    /// Positive for positive symbols, negative for negative ones.
    pub definite: bool,
    pub invertible: bool,
    pub tol: f64,
    pub pass: bool,
}

pub fn verify_multiplier_as_frame_operator(
    frame: &FrameSystem,
    m: &Symbol,
    tol: f64,
) -> Result<MultiplierFrameOperatorReport> {
    semi_normalized_witness(m, DEFAULT_TOL)?;
    let sign = if m.is_positive(DEFAULT_TOL) {
        SymbolSign::Positive
    } else if m.is_negative(DEFAULT_TOL) {
        SymbolSign::Negative
    } else {
        return Err(Error::NotPositiveWeights);
    };
    let magnitude = match sign {
        SymbolSign::Positive => m.clone(),
        SymbolSign::Negative => m.scale(Complex64::new(-1.0, 0.0)),
    };
    let mult = multiplier(m, frame, frame)?;
    let roots = magnitude.sqrt(DEFAULT_TOL)?;
    let s = reweight_frame(frame, &roots)?.frame_operator().clone();
    let signed = match sign {
        SymbolSign::Positive => s,
        SymbolSign::Negative => s.scale(Complex64::new(-1.0, 0.0)),
    };
    let scale = mult.norm().max(f64::MIN_POSITIVE);
    let identity_defect = mult.sub(&signed)?.norm() / scale;
    let slack = tol * scale;
    let self_adjoint = mult.is_self_adjoint(slack);
    let definite = match sign {
        SymbolSign::Positive => mult.is_positive(slack),
        SymbolSign::Negative => mult.is_negative(slack),
    };
    let invertible = mult.is_invertible(slack);
    Ok(MultiplierFrameOperatorReport {
        sign,
        identity_defect,
        self_adjoint,
        definite,
        invertible,
        tol,
        pass: identity_defect <= tol && self_adjoint && definite && invertible,
    })
}

/// The six equivalent conditions relating frames, weighted frames and
/// multipliers for positive semi-normalized weights.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WeightedFrameEquivalenceReport {
    /// `Ψ` is a frame.
    pub frame: bool,
    /// `M_{w,Ψ}` is positive and invertible.
    pub multiplier_positive_invertible: bool,
    /// `(w, Ψ)` is a `w`-frame.
    pub weighted_frame: bool,
    /// `{√ω_j ψ_j}` is a frame.
    pub sqrt_reweighted_frame: bool,
    /// `M_{w′,Ψ}` is positive and invertible for every sampled positive
    /// semi-normalized `w′`.
    pub every_multiplier_positive_invertible: bool,
    /// `{ω_j ψ_j}` is a frame.
    pub reweighted_frame: bool,
    pub extra_symbols: usize,
    pub agree: bool,
}

impl WeightedFrameEquivalenceReport {
    pub fn predicates(&self) -> [bool; 6] {
        [
            self.frame,
            self.multiplier_positive_invertible,
            self.weighted_frame,
            self.sqrt_reweighted_frame,
            self.every_multiplier_positive_invertible,
            self.reweighted_frame,
        ]
    }
}

fn positive_invertible(op: &ModuleOperator, tol: f64) -> bool {
    let slack = tol * op.norm();
    op.is_positive(slack) && op.is_invertible(slack)
}

/// Evaluates all six conditions. The condition quantified over every
/// positive semi-normalized sequence is sampled with `extra_symbols`
/// independent draws of weights in `[0.5, 3]`.
pub fn verify_weighted_frame_equivalences(
    frame: &FrameSystem,
    w: &Symbol,
    extra_symbols: usize,
    seed: u64,
    tol: f64,
) -> Result<WeightedFrameEquivalenceReport> {
    semi_normalized_witness(w, DEFAULT_TOL)?;
    if !w.is_positive(DEFAULT_TOL) {
        return Err(Error::NotPositiveWeights);
    }
    let is_frame = frame.is_frame(tol);
    let multiplier_positive_invertible = positive_invertible(&multiplier(w, frame, frame)?, tol);
    let (weighted_frame, _) = is_w_frame(frame, w, tol)?;
    let sqrt_reweighted_frame = reweight_frame(frame, &w.sqrt(DEFAULT_TOL)?)?.is_frame(tol);
    let mut rng = random::seeded(seed);
    let mut every = true;
    for _ in 0..extra_symbols {
        let w2 = random::real_symbol(&w.shape, w.len(), 0.5, 3.0, &mut rng)?;
        every &= positive_invertible(&multiplier(&w2, frame, frame)?, tol);
    }
    let reweighted_frame = reweight_frame(frame, w)?.is_frame(tol);
    let mut report = WeightedFrameEquivalenceReport {
        frame: is_frame,
        multiplier_positive_invertible,
        weighted_frame,
        sqrt_reweighted_frame,
        every_multiplier_positive_invertible: every,
        reweighted_frame,
        extra_symbols,
        agree: false,
    };
    let p = report.predicates();
    report.agree = p.iter().all(|&x| x == p[0]);
    Ok(report)
}

/// Recovery of the weights of a controller that is diagonal on the frame,
/// `Cψ_j = ω_j ψ_j`, and the identity `C = M_{W,Ψ̃,Ψ}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiagonalControllerReport {
    pub weights: Symbol,
    /// Largest relative residual `‖Cψ_j − ω_jψ_j‖ / ‖Cψ_j‖` over `j` and blocks.
    pub max_residual: f64,
    pub witness: SemiNormalizedWitness,
    pub positive: bool,
    /// Spectral bounds of `C`.
    pub controller_bounds: FrameBounds,
    pub within_controller_bounds: bool,
    pub controlled_frame: bool,
    /// `‖C − M_{W,Ψ̃,Ψ}‖`.
    pub reconstruction_defect: f64,
    pub tol: f64,
    pub pass: bool,
}

/// Relative least-squares residual threshold for deciding diagonality.
pub const DIAGONALITY_TOL: f64 = 1e-8;

pub fn extract_diagonal_controller(frame: &FrameSystem, c: &Controller, tol: f64) -> Result<DiagonalControllerReport> {
    let op = c.operator();
    let defect = op.self_adjoint_defect();
    if defect > tol * op.norm() {
        return Err(Error::NotSelfAdjoint { defect });
    }
    let shape = frame.shape();
    let algebra = shape.algebra().clone();
    let block_floor: Vec<f64> = op
        .block_mats()
        .iter()
        .map(|m| linalg::hermitian_eigenvalues(m)[0])
        .collect();
    let mut values = Vec::with_capacity(frame.len());
    let mut max_residual = 0.0f64;
    for (j, psi) in frame.vectors().iter().enumerate() {
        let image = op.apply(psi)?;
        let mut scalars = Vec::with_capacity(algebra.num_blocks());
        for (b, &floor) in block_floor.iter().enumerate() {
            let p = psi.flattened(b);
            let cp = image.flattened(b);
            let pp = p.norm_squared();
            if pp == 0.0 {
                // no constraint from a vanishing block
                scalars.push(Complex64::new(floor, 0.0));
                continue;
            }
            let omega = p.iter().zip(cp.iter()).map(|(x, y)| x.conj() * y).sum::<Complex64>() / pp;
            let residual = (cp - p * omega).norm() / cp.norm().max(f64::MIN_POSITIVE);
            if residual > DIAGONALITY_TOL {
                return Err(Error::NotDiagonalOnFrame { index: j, residual });
            }
            max_residual = max_residual.max(residual);
            scalars.push(omega);
        }
        values.push(CentralElement::new(algebra.clone(), scalars)?);
    }
    let weights = Symbol::new(algebra, values)?;
    let witness = semi_normalized_witness(&weights, DEFAULT_TOL)?;
    let positive = weights.is_positive(tol.max(DEFAULT_TOL) * weights.sup_norm());
    let (lower, upper) = op.spectral_bounds();
    let slack = tol.max(DEFAULT_TOL) * op.norm();
    let within_controller_bounds = witness.a >= lower - slack && witness.b <= upper + slack;
    let controlled_frame = is_controlled_frame(frame, c, CONTROLLED_TOL)?.is_controlled_frame;
    let dual = frame.canonical_dual()?;
    let reconstruction_defect = op.sub(&multiplier(&weights, &dual, frame)?)?.norm();
    Ok(DiagonalControllerReport {
        pass: positive && within_controller_bounds && controlled_frame && reconstruction_defect <= tol,
        weights,
        max_residual,
        witness,
        positive,
        controller_bounds: FrameBounds { lower, upper },
        within_controller_bounds,
        controlled_frame,
        reconstruction_defect,
        tol,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::module_space::ModuleShape;

    fn line(n: usize) -> ModuleShape {
        ModuleShape::new(AlgebraShape::complex(), n).unwrap()
    }

    fn repeated() -> FrameSystem {
        let s = line(2);
        let e = |i| ModuleVector::generator(&s, i).unwrap();
        FrameSystem::new(&s, vec![e(0), e(1), e(0)]).unwrap()
    }

    #[test]
    fn unit_and_zero_symbols() {
        let f = repeated();
        let a = f.shape().algebra().clone();
        assert_eq!(
            &multiplier(&Symbol::constant(&a, 3, 1.0), &f, &f).unwrap(),
            f.frame_operator()
        );
        assert_eq!(
            multiplier(&Symbol::constant(&a, 3, 0.0), &f, &f).unwrap(),
            ModuleOperator::zero(f.shape())
        );
        assert!(matches!(
            multiplier(&Symbol::constant(&a, 2, 1.0), &f, &f),
            Err(Error::LengthMismatch { .. })
        ));
    }

    #[test]
    fn witness_examples() {
        let a = AlgebraShape::complex();
        assert_eq!(
            semi_normalized_witness(&Symbol::constant(&a, 4, 1.0), 1e-12).unwrap(),
            SemiNormalizedWitness { a: 1.0, b: 1.0 }
        );
        assert_eq!(
            semi_normalized_witness(&Symbol::from_reals(&a, &[1.0, 2.0, 0.5]), 1e-12).unwrap(),
            SemiNormalizedWitness { a: 0.5, b: 2.0 }
        );
        assert!(matches!(
            semi_normalized_witness(&Symbol::from_reals(&a, &[1.0, 0.0]), 1e-12),
            Err(Error::NotSemiNormalized { .. })
        ));
    }

    #[test]
    fn w_frame_reduces_and_scales() {
        let s = ModuleShape::new(AlgebraShape::new(vec![2, 1]).unwrap(), 2).unwrap();
        let f = FrameSystem::standard_basis(&s);
        let a = s.algebra().clone();
        let (ok, b) = is_w_frame(&f, &Symbol::constant(&a, 2, 1.0), 1e-10).unwrap();
        assert!(ok && b == f.optimal_bounds());
        let (_, b4) = is_w_frame(&f, &Symbol::constant(&a, 2, 4.0), 1e-10).unwrap();
        assert!((b4.lower - 4.0).abs() < 1e-14 && (b4.upper - 4.0).abs() < 1e-14);
        assert!(matches!(
            is_w_frame(&f, &Symbol::constant(&a, 2, -1.0), 1e-10),
            Err(Error::NotPositiveWeights)
        ));
    }

    #[test]
    fn unit_reweighting_is_identity() {
        let f = repeated();
        let a = f.shape().algebra().clone();
        let one = Symbol::constant(&a, 3, 1.0);
        assert_eq!(reweight_frame(&f, &one).unwrap(), f);
        assert_eq!(dual_reweighted(&f, &one).unwrap(), f.canonical_dual().unwrap());
        let t = reweight_frame(&f, &Symbol::constant(&a, 3, 3.0))
            .unwrap()
            .optimal_bounds();
        assert!((t.lower - 9.0).abs() < 1e-12 && (t.upper - 18.0).abs() < 1e-12);
        assert!(matches!(
            reweight_frame(&f, &Symbol::from_reals(&a, &[1.0, 0.0, 1.0])),
            Err(Error::NotSemiNormalized { .. })
        ));
    }

    #[test]
    fn scaled_symbol_multiplier() {
        let f = repeated();
        let a = f.shape().algebra().clone();
        let r = verify_multiplier_as_frame_operator(&f, &Symbol::constant(&a, 3, 4.0), 1e-10).unwrap();
        assert!(r.pass && r.sign == SymbolSign::Positive && r.identity_defect == 0.0);
        let n = verify_multiplier_as_frame_operator(&f, &Symbol::constant(&a, 3, -2.0), 1e-10).unwrap();
        assert!(n.pass && n.sign == SymbolSign::Negative);
        assert!(matches!(
            verify_multiplier_as_frame_operator(&f, &Symbol::from_reals(&a, &[1.0, -1.0, 1.0]), 1e-10),
            Err(Error::NotPositiveWeights)
        ));
    }

    #[test]
    fn equivalences_on_basis_and_non_frame() {
        let s = ModuleShape::new(AlgebraShape::new(vec![2]).unwrap(), 2).unwrap();
        let a = s.algebra().clone();
        let basis = FrameSystem::standard_basis(&s);
        let r = verify_weighted_frame_equivalences(&basis, &Symbol::constant(&a, 2, 1.0), 5, 1, 1e-10).unwrap();
        assert!(r.agree && r.frame);
        let single = FrameSystem::new(&s, vec![ModuleVector::generator(&s, 0).unwrap()]).unwrap();
        let r = verify_weighted_frame_equivalences(&single, &Symbol::constant(&a, 1, 2.5), 5, 1, 1e-10).unwrap();
        assert!(r.agree && !r.frame);
        assert_eq!(r.predicates(), [false; 6]);
    }

    #[test]
    fn scalar_controllers_are_diagonal() {
        let f = repeated();
        let r = extract_diagonal_controller(&f, &Controller::identity(f.shape()), 1e-9).unwrap();
        assert!(r.pass);
        assert!(r.weights.values().iter().all(|v| (v.scalar(0) - 1.0).norm() < 1e-15));
        let r3 = extract_diagonal_controller(&f, &Controller::scalar(f.shape(), 3.0).unwrap(), 1e-9).unwrap();
        assert_eq!(r3.witness, SemiNormalizedWitness { a: 3.0, b: 3.0 });
    }

    #[test]
    fn non_diagonal_controller_rejected() {
        let s = line(2);
        let e = |i| ModuleVector::generator(&s, i).unwrap();
        let v = e(0).add(&e(1)).unwrap();
        let f = FrameSystem::new(&s, vec![e(0), v]).unwrap();
        let c = Controller::new(
            ModuleOperator::from_block_mats(
                &s,
                vec![linalg::CMatrix::from_fn(2, 2, |i, j| {
                    Complex64::new(if i == j { (i + 1) as f64 } else { 0.0 }, 0.0)
                })],
            )
            .unwrap(),
        )
        .unwrap();
        assert!(matches!(
            extract_diagonal_controller(&f, &c, 1e-9),
            Err(Error::NotDiagonalOnFrame { index: 1, .. })
        ));
    }

    #[test]
    fn json_symbol_file() {
        let a = AlgebraShape::new(vec![1, 2]).unwrap();
        let m = Symbol::from_reals(&a, &[1.0, 0.5]);
        let text = serde_json::to_string(&m).unwrap();
        assert_eq!(
            text,
            r#"{"algebra":{"block_dims":[1,2]},"values":[[[1.0,0.0],[1.0,0.0]],[[0.5,0.0],[0.5,0.0]]]}"#
        );
        assert_eq!(serde_json::from_str::<Symbol>(&text).unwrap(), m);
    }
}
