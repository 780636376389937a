//! Controlled frames.
//!
//! For an invertible operator `C`, a system `{ψ_j}` is a `C`-controlled
//! frame when
//!
//! ```text
//! m⟨f,f⟩ ≤ Σ_j ⟨f,ψ_j⟩⟨Cψ_j,f⟩ ≤ M⟨f,f⟩      for all f
//! ```
//!
//! with `m > 0`. The controlled frame operator `S_C f = Σ_j ⟨f,ψ_j⟩Cψ_j` is
//! `C ∘ S` and has block matrices `Q_b R_b` (frame operator `Q`, controller
//! `R`). The middle term equals `F_b Q_b R_b F_b*`; requiring it to be
//! self-adjoint for every `f` forces `QR` to be Hermitian, after which the
//! inequality is a statement about the spectrum of `QR`. Acceptance is
//! therefore decided spectrally, and the Hermitian defect of `QR` is
//! reported alongside the bounds.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::frames::{self, FrameBounds, FrameSystem, NormCharacterizationReport};
use crate::linalg::CMatrix;
use crate::module_space::{ModuleOperator, ModuleShape, ModuleVector};
use crate::{random, DEFAULT_TOL};

/// Default relative tolerance for the Hermitian defect of `S_C`.
pub const CONTROLLED_TOL: f64 = 1e-9;

/// An invertible operator used as controller.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "ModuleOperator", into = "ModuleOperator")]
pub struct Controller {
    op: ModuleOperator,
}

impl TryFrom<ModuleOperator> for Controller {
    type Error = Error;
    fn try_from(op: ModuleOperator) -> Result<Self> {
        Controller::new(op)
    }
}

impl From<Controller> for ModuleOperator {
    fn from(c: Controller) -> Self {
        c.op
    }
}

impl Controller {
    pub fn new(op: ModuleOperator) -> Result<Self> {
        let min_sv = op.min_singular_value();
        if !op.is_invertible(DEFAULT_TOL * op.norm()) || min_sv == 0.0 {
            return Err(Error::Singular {
                min_singular_value: min_sv,
            });
        }
        Ok(Self { op })
    }

    pub fn identity(shape: &ModuleShape) -> Self {
        Self {
            op: ModuleOperator::identity(shape),
        }
    }

    /// `t·I` for a nonzero real `t`.
    pub fn scalar(shape: &ModuleShape, t: f64) -> Result<Self> {
        Self::new(ModuleOperator::scalar(shape, Complex64::new(t, 0.0)))
    }

    /// Multiplication by a central element, `f ↦ c·f`.
    pub fn central(shape: &ModuleShape, c: &crate::algebra::CentralElement) -> Result<Self> {
        Self::new(ModuleOperator::central(shape, c)?)
    }

    /// `p(S) = Σ_k coeffs[k]·S^k` for the frame operator of `frame`. Such
    /// controllers commute with `S`.
    pub fn polynomial_in_frame_operator(frame: &FrameSystem, coeffs: &[f64]) -> Result<Self> {
        let s = frame.frame_operator();
        let shape = frame.shape();
        let mut acc = ModuleOperator::zero(shape);
        let mut power = ModuleOperator::identity(shape);
        for (k, &a) in coeffs.iter().enumerate() {
            if k > 0 {
                power = s.compose(&power)?;
            }
            acc = acc.add(&power.scale(Complex64::new(a, 0.0)))?;
        }
        Self::new(acc.hermitian_part())
    }

    /// Jacobi-style controller: the inverse of the diagonal of each `Q_b`.
    pub fn jacobi(frame: &FrameSystem) -> Result<Self> {
        let op = frame.frame_operator().map(|q| {
            let n = q.nrows();
            CMatrix::from_fn(n, n, |i, j| {
                if i == j {
                    Complex64::new(1.0 / q[(i, i)].re, 0.0)
                } else {
                    Complex64::new(0.0, 0.0)
                }
            })
        });
        Self::new(op)
    }

    /// `S⁻¹`, the exact preconditioner.
    pub fn inverse_frame_operator(frame: &FrameSystem) -> Result<Self> {
        Self::new(frame.frame_operator().inverse()?)
    }

    pub fn operator(&self) -> &ModuleOperator {
        &self.op
    }

    pub fn shape(&self) -> &ModuleShape {
        self.op.shape()
    }
}

/// `S_C = C ∘ S`, block matrices `Q_b R_b`.
pub fn controlled_frame_operator(frame: &FrameSystem, c: &Controller) -> Result<ModuleOperator> {
    c.op.compose(frame.frame_operator())
}

/// `Σ_j ⟨f,ψ_j⟩ Cψ_j`, summed term by term.
pub fn controlled_sum(frame: &FrameSystem, c: &Controller, f: &ModuleVector) -> Result<ModuleVector> {
    let mut acc = ModuleVector::zero(frame.shape());
    for psi in frame.vectors() {
        acc = acc.add(&c.op.apply(psi)?.left_mul(&f.inner(psi)?)?)?;
    }
    Ok(acc)
}

/// `Σ_j ⟨f,Cψ_j⟩ ψ_j`, summed term by term.
pub fn controlled_sum_swapped(frame: &FrameSystem, c: &Controller, f: &ModuleVector) -> Result<ModuleVector> {
    let mut acc = ModuleVector::zero(frame.shape());
    for psi in frame.vectors() {
        acc = acc.add(&psi.left_mul(&f.inner(&c.op.apply(psi)?)?)?)?;
    }
    Ok(acc)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ControlledFrameReport {
    pub is_controlled_frame: bool,
    /// `(m, M)` from the spectrum of the Hermitian part of `S_C`.
    pub bounds: FrameBounds,
    /// `‖S_C − S_C*‖`.
    pub self_adjoint_defect: f64,
    /// `‖CS − SC*‖`.
    pub commutation_defect: f64,
    /// `‖S‖·‖C‖`, the scale the tolerance is relative to.
    pub scale: f64,
    pub tol: f64,
}

/// Spectral decision of the controlled-frame inequality. Accepted when the
/// Hermitian defect of `S_C` is at most `tol·‖S‖‖C‖` and `m` exceeds the
/// same threshold.
pub fn is_controlled_frame(frame: &FrameSystem, c: &Controller, tol: f64) -> Result<ControlledFrameReport> {
    let s = frame.frame_operator();
    let sc = controlled_frame_operator(frame, c)?;
    let self_adjoint_defect = sc.self_adjoint_defect();
    let commutation_defect = c.op.compose(s)?.sub(&s.compose(&c.op.adjoint())?)?.norm();
    let (lower, upper) = sc.spectral_bounds();
    let scale = s.norm() * c.op.norm();
    let threshold = tol * scale;
    Ok(ControlledFrameReport {
        is_controlled_frame: self_adjoint_defect <= threshold && lower > threshold,
        bounds: FrameBounds { lower, upper },
        self_adjoint_defect,
        commutation_defect,
        scale,
        tol,
    })
}

/// Sampled check of `m‖f‖² ≤ ‖Σ⟨f,ψ_j⟩⟨Cψ_j,f⟩‖ ≤ M‖f‖²` at the spectral
/// bounds of an accepted controlled frame.
pub fn controlled_characterization_check(
    frame: &FrameSystem,
    c: &Controller,
    samples: usize,
    seed: u64,
    tol: f64,
) -> Result<NormCharacterizationReport> {
    let report = is_controlled_frame(frame, c, CONTROLLED_TOL)?;
    if !report.is_controlled_frame {
        return Err(Error::NotControlledFrame(format!(
            "lower bound {:e}, self-adjoint defect {:e}",
            report.bounds.lower, report.self_adjoint_defect
        )));
    }
    let sc = controlled_frame_operator(frame, c)?;
    frames::norm_characterization(&sc, report.bounds.lower, report.bounds.upper, samples, seed, tol)
}

/// Checks on `S_C` for an accepted controlled frame: `S_C* = S∘C*`, and
/// `S_C` positive, self-adjoint and invertible.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OperatorPropertiesReport {
    pub applicable: bool,
    /// `‖S_C* − S∘C*‖ / (‖S‖‖C‖)`.
    pub adjoint_identity_defect: f64,
    pub positive: bool,
    pub self_adjoint: bool,
    pub invertible: bool,
    pub bounds: FrameBounds,
    pub tol: f64,
    pub pass: bool,
}

pub fn verify_controlled_operator_properties(
    frame: &FrameSystem,
    c: &Controller,
    tol: f64,
) -> Result<OperatorPropertiesReport> {
    let acceptance = is_controlled_frame(frame, c, CONTROLLED_TOL)?;
    let s = frame.frame_operator();
    let sc = controlled_frame_operator(frame, c)?;
    let scale = acceptance.scale.max(f64::MIN_POSITIVE);
    let adjoint_identity_defect = sc.adjoint().sub(&s.compose(&c.op.adjoint())?)?.norm() / scale;
    let slack = tol * scale;
    let positive = sc.is_positive(slack);
    let self_adjoint = sc.is_self_adjoint(slack);
    let invertible = sc.is_invertible(slack);
    let pass =
        acceptance.is_controlled_frame && adjoint_identity_defect <= tol && positive && self_adjoint && invertible;
    Ok(OperatorPropertiesReport {
        applicable: acceptance.is_controlled_frame,
        adjoint_identity_defect,
        positive,
        self_adjoint,
        invertible,
        bounds: acceptance.bounds,
        tol,
        pass,
    })
}

/// Commutation `CS = SC*` and the resulting equality of the two summation
/// forms `Σ⟨f,ψ_j⟩Cψ_j = Σ⟨f,Cψ_j⟩ψ_j`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CommutationReport {
    /// Whether the system is an accepted controlled frame; otherwise the
    /// defects are informational only.
    pub applicable: bool,
    /// `‖CS − SC*‖ / (‖S‖‖C‖)`.
    pub commutation_defect: f64,
    /// Largest `‖Σ⟨f,ψ_j⟩Cψ_j − Σ⟨f,Cψ_j⟩ψ_j‖ / (‖S‖‖C‖)` over unit samples.
    pub summation_defect: f64,
    pub samples: usize,
    pub tol: f64,
    pub pass: bool,
}

pub fn verify_commutation(
    frame: &FrameSystem,
    c: &Controller,
    samples: usize,
    seed: u64,
    tol: f64,
) -> Result<CommutationReport> {
    let acceptance = is_controlled_frame(frame, c, CONTROLLED_TOL)?;
    let scale = acceptance.scale.max(f64::MIN_POSITIVE);
    let commutation_defect = acceptance.commutation_defect / scale;
    let mut rng = random::seeded(seed);
    let mut summation_defect = 0.0f64;
    for _ in 0..samples {
        let f = random::unit_vector(frame.shape(), &mut rng);
        let lhs = controlled_sum(frame, c, &f)?;
        let rhs = controlled_sum_swapped(frame, c, &f)?;
        summation_defect = summation_defect.max(lhs.sub(&rhs)?.norm() / scale);
    }
    Ok(CommutationReport {
        applicable: acceptance.is_controlled_frame,
        commutation_defect,
        summation_defect,
        samples,
        tol,
        pass: acceptance.is_controlled_frame && commutation_defect <= tol && summation_defect <= tol,
    })
}

/// Both sides of the equivalence for a self-adjoint controller:
/// controlled frame ⇔ (frame, `C ≥ 0`, `CS = SC`).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SelfAdjointEquivalenceReport {
    pub controlled_frame: bool,
    pub is_frame: bool,
    pub controller_positive: bool,
    pub commutes: bool,
    /// `‖CS − SC‖ / (‖S‖‖C‖)`.
    pub commutator_norm: f64,
    pub agree: bool,
}

impl SelfAdjointEquivalenceReport {
    pub fn right_side(&self) -> bool {
        self.is_frame && self.controller_positive && self.commutes
    }
}

pub fn verify_self_adjoint_controller_equivalence(
    frame: &FrameSystem,
    c: &Controller,
    tol: f64,
) -> Result<SelfAdjointEquivalenceReport> {
    let norm_c = c.op.norm();
    let defect = c.op.self_adjoint_defect();
    if defect > tol * norm_c {
        return Err(Error::NotSelfAdjoint { defect });
    }
    let s = frame.frame_operator();
    let scale = (s.norm() * norm_c).max(f64::MIN_POSITIVE);
    let commutator_norm = c.op.compose(s)?.sub(&s.compose(&c.op)?)?.norm() / scale;
    let controlled_frame = is_controlled_frame(frame, c, tol)?.is_controlled_frame;
    let is_frame = frame.is_frame(tol);
    let controller_positive = c.op.is_positive(tol * norm_c);
    let commutes = commutator_norm <= tol;
    let rhs = is_frame && controller_positive && commutes;
    Ok(SelfAdjointEquivalenceReport {
        controlled_frame,
        is_frame,
        controller_positive,
        commutes,
        commutator_norm,
        agree: controlled_frame == rhs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::AlgebraShape;

    fn line(n: usize) -> ModuleShape {
        ModuleShape::new(AlgebraShape::complex(), n).unwrap()
    }

    fn repeated() -> FrameSystem {
        let s = line(2);
        let e = |i| ModuleVector::generator(&s, i).unwrap();
        FrameSystem::new(&s, vec![e(0), e(1), e(0)]).unwrap()
    }

    fn diag_controller(s: &ModuleShape, d: &[f64]) -> Controller {
        let n = d.len();
        let m = CMatrix::from_fn(n, n, |i, j| {
            if i == j {
                Complex64::new(d[i], 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        });
        Controller::new(ModuleOperator::from_block_mats(s, vec![m]).unwrap()).unwrap()
    }

    #[test]
    fn identity_controller_gives_frame_operator() {
        let f = repeated();
        let sc = controlled_frame_operator(&f, &Controller::identity(f.shape())).unwrap();
        assert_eq!(&sc, f.frame_operator());
    }

    #[test]
    fn singular_controller_rejected() {
        let s = line(2);
        assert!(matches!(
            Controller::new(ModuleOperator::zero(&s)),
            Err(Error::Singular { .. })
        ));
        assert!(Controller::scalar(&s, 0.0).is_err());
    }

    #[test]
    fn parseval_identity_controlled() {
        let s = ModuleShape::new(AlgebraShape::new(vec![2, 1]).unwrap(), 2).unwrap();
        let f = FrameSystem::standard_basis(&s);
        let r = is_controlled_frame(&f, &Controller::identity(&s), CONTROLLED_TOL).unwrap();
        assert!(r.is_controlled_frame);
        assert_eq!(r.bounds, FrameBounds { lower: 1.0, upper: 1.0 });
        let two = controlled_frame_operator(&f, &Controller::scalar(&s, 2.0).unwrap()).unwrap();
        assert_eq!(two, ModuleOperator::scalar(&s, Complex64::new(2.0, 0.0)));
    }

    #[test]
    fn tight_diagonal_controlled_frame() {
        let f = repeated();
        let c = diag_controller(f.shape(), &[1.0, 2.0]);
        let r = is_controlled_frame(&f, &c, CONTROLLED_TOL).unwrap();
        assert!(r.is_controlled_frame);
        assert!((r.bounds.lower - 2.0).abs() < 1e-14 && (r.bounds.upper - 2.0).abs() < 1e-14);
        assert!(r.commutation_defect <= 1e-12);
        let norm = controlled_characterization_check(&f, &c, 50, 3, 1e-10).unwrap();
        assert!(norm.pass);
        assert!(norm.worst_lower_margin.abs() < 1e-10 && norm.worst_upper_margin.abs() < 1e-10);
    }

    #[test]
    fn non_commuting_controller_rejected() {
        let f = repeated();
        let m = CMatrix::from_fn(2, 2, |i, j| match (i, j) {
            (0, 0) => Complex64::new(1.0, 0.0),
            (1, 1) => Complex64::new(2.0, 0.0),
            _ => Complex64::new(0.5, 0.0),
        });
        let c = Controller::new(ModuleOperator::from_block_mats(f.shape(), vec![m]).unwrap()).unwrap();
        let r = is_controlled_frame(&f, &c, CONTROLLED_TOL).unwrap();
        assert!(!r.is_controlled_frame);
        assert!(r.self_adjoint_defect > 0.1);
        assert!(matches!(
            controlled_characterization_check(&f, &c, 10, 0, 1e-10),
            Err(Error::NotControlledFrame(_))
        ));
        let comm = verify_commutation(&f, &c, 10, 0, 1e-10).unwrap();
        assert!(!comm.applicable && !comm.pass && comm.commutation_defect > 0.0);
        let eq = verify_self_adjoint_controller_equivalence(&f, &c, 1e-9).unwrap();
        assert!(!eq.controlled_frame && !eq.commutes && eq.controller_positive && eq.agree);
    }

    #[test]
    fn negative_identity_controller() {
        let f = repeated();
        let c = Controller::scalar(f.shape(), -1.0).unwrap();
        let eq = verify_self_adjoint_controller_equivalence(&f, &c, 1e-9).unwrap();
        assert!(!eq.controlled_frame && !eq.controller_positive && eq.agree);
    }

    #[test]
    fn frame_operator_as_controller() {
        let f = repeated();
        let c = Controller::new(f.frame_operator().clone()).unwrap();
        let eq = verify_self_adjoint_controller_equivalence(&f, &c, 1e-9).unwrap();
        assert!(eq.controlled_frame && eq.right_side() && eq.agree);
        let p = verify_controlled_operator_properties(&f, &c, 1e-10).unwrap();
        assert!(p.pass, "{p:?}");
    }

    #[test]
    fn non_self_adjoint_controller_error() {
        let f = repeated();
        let m = CMatrix::from_fn(2, 2, |i, j| {
            if j >= i {
                Complex64::new(1.0, 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        });
        let c = Controller::new(ModuleOperator::from_block_mats(f.shape(), vec![m]).unwrap()).unwrap();
        assert!(matches!(
            verify_self_adjoint_controller_equivalence(&f, &c, 1e-9),
            Err(Error::NotSelfAdjoint { .. })
        ));
    }

    #[test]
    fn polynomial_controller_commutes() {
        let f = repeated();
        let c = Controller::polynomial_in_frame_operator(&f, &[1.0, 0.0, 1.0]).unwrap();
        // S = diag(2,1): S² + I = diag(5, 2)
        let r = c.operator().block_mat(0);
        assert!((r[(0, 0)].re - 5.0).abs() < 1e-12 && (r[(1, 1)].re - 2.0).abs() < 1e-12);
        let p = verify_controlled_operator_properties(&f, &c, 1e-10).unwrap();
        assert!(p.pass);
        let comm = verify_commutation(&f, &c, 20, 9, 1e-10).unwrap();
        assert!(comm.pass, "{comm:?}");
    }
}
