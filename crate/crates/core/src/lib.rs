//! Frames, controlled frames, multipliers and weighted frames in Hilbert
//! C*-modules over finite-dimensional C*-algebras.
//!
//! The algebra is `A = M_{d_1}(ℂ) ⊕ … ⊕ M_{d_B}(ℂ)` and the module is
//! `H = Aⁿ` with the `A`-valued inner product `⟨f, g⟩ = Σ_i f_i g_i*`.
//! Adjointable operators are stored as per-block right multiplications,
//! which turns every Loewner-order statement about frames into a
//! statement about eigenvalues of small Hermitian matrices.
//!
//! ```
//! use csframe::{AlgebraShape, FrameSystem, ModuleShape, ModuleVector};
//!
//! let shape = ModuleShape::new(AlgebraShape::complex(), 2)?;
//! let e = |i| ModuleVector::generator(&shape, i);
//! let frame = FrameSystem::new(&shape, vec![e(0)?, e(1)?, e(0)?])?;
//! let bounds = frame.optimal_bounds();
//! assert!((bounds.lower - 1.0).abs() < 1e-12);
//! assert!((bounds.upper - 2.0).abs() < 1e-12);
//! # Ok::<(), csframe::Error>(())
//! ```
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod algebra;
pub mod controlled;
pub mod error;
pub mod frames;
mod linalg;
pub mod module_space;
pub mod multipliers;
pub mod random;
pub mod solver;

/// Default tolerance wherever a tolerance parameter has a default.
pub const DEFAULT_TOL: f64 = 1e-10;

pub use algebra::{AlgebraElement, AlgebraShape, CentralElement};
pub use controlled::{ControlledFrameReport, Controller};
pub use error::{Error, Result};
pub use frames::{CoefficientSequence, FrameBounds, FrameSystem};
pub use linalg::CMatrix;
pub use module_space::{ModuleOperator, ModuleShape, ModuleVector};
pub use multipliers::{SemiNormalizedWitness, Symbol};
pub use num_complex::Complex64;
pub use solver::{ConvergenceTrace, SolveConfig};
