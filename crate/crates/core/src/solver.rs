//! Iterative inversion of the frame operator.
//!
//! Solves `S f = g` with preconditioned Richardson iteration
//!
//! ```text
//! f_0 = 0,   f_{k+1} = f_k + λ·P(g − S f_k),
//! ```
//!
//! where `P` is an optional controller. The error evolves by `I − λ·PS`,
//! so with effective bounds `C ≤ spec(PS) ≤ D` the contraction factor is
//! `max(|1 − λC|, |1 − λD|)`, equal to `(D − C)/(D + C)` at the optimal
//! relaxation `λ = 2/(C + D)`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::controlled::{controlled_frame_operator, is_controlled_frame, Controller, CONTROLLED_TOL};
use crate::error::{Error, Result};
use crate::frames::{FrameBounds, FrameSystem};
use crate::linalg;
use crate::module_space::ModuleVector;
use crate::{random, DEFAULT_TOL};

/// Consecutive error increases tolerated before giving up.
pub const DIVERGENCE_WINDOW: usize = 10;

#[derive(Debug, Clone, PartialEq)]
pub struct SolveConfig {
    pub max_iters: usize,
    /// Stop once `‖S f − g‖ ≤ target_residual·‖g‖`.
    pub target_residual: f64,
    /// Defaults to `2/(C + D)` of the effective operator.
    pub relaxation: Option<f64>,
    pub controller: Option<Controller>,
    /// Seed for generated right-hand sides (benchmarks).
    pub seed: u64,
}

impl Default for SolveConfig {
    fn default() -> Self {
        Self {
            max_iters: 10_000,
            target_residual: 1e-10,
            relaxation: None,
            controller: None,
            seed: 0,
        }
    }
}

impl SolveConfig {
    pub fn validate(&self) -> Result<()> {
        if self.max_iters == 0 {
            return Err(Error::InvalidParameter("max_iters must be at least 1".into()));
        }
        if !(self.target_residual > 0.0) {
            return Err(Error::InvalidParameter("target residual must be positive".into()));
        }
        if let Some(l) = self.relaxation {
            if !(l > 0.0) {
                return Err(Error::InvalidParameter("relaxation must be positive".into()));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceTrace {
    /// `‖f_k − S⁻¹g‖` for `k = 0, 1, …` (entry 0 is the initial error).
    pub residuals: Vec<f64>,
    pub measured_rate: f64,
    pub theoretical_rate: f64,
    pub iterations: usize,
    pub converged: bool,
    pub relaxation: f64,
    pub effective_bounds: FrameBounds,
}

impl ConvergenceTrace {
    /// `(iter, residual, ratio to previous)`; the ratio is `NaN` at iteration 0.
    pub fn rows(&self) -> impl Iterator<Item = (usize, f64, f64)> + '_ {
        self.residuals.iter().enumerate().map(|(k, &r)| {
            let ratio = if k == 0 { f64::NAN } else { r / self.residuals[k - 1] };
            (k, r, ratio)
        })
    }
}

/// Spectral bounds of the effective operator `P∘S`.
///
/// Accepted controllers either make `PS` a controlled frame operator
/// (Hermitian with positive spectrum) or are themselves positive definite,
/// in which case `PS` is similar to `P^{1/2} S P^{1/2}` and its spectrum is
/// read from there.
pub fn effective_bounds(frame: &FrameSystem, controller: Option<&Controller>) -> Result<FrameBounds> {
    if !frame.is_frame(DEFAULT_TOL) {
        return Err(Error::NotAFrame {
            lower: frame.optimal_bounds().lower,
        });
    }
    let Some(c) = controller else {
        return Ok(frame.optimal_bounds());
    };
    let report = is_controlled_frame(frame, c, CONTROLLED_TOL)?;
    if report.is_controlled_frame {
        return Ok(report.bounds);
    }
    let p = c.operator();
    let norm = p.norm();
    if p.is_self_adjoint(CONTROLLED_TOL * norm) && p.spectral_bounds().0 > DEFAULT_TOL * norm {
        let root = p.hermitian_function(f64::sqrt);
        let similar = root.compose(frame.frame_operator())?.compose(&root)?;
        let (lower, upper) = similar.spectral_bounds();
        if lower > 0.0 {
            return Ok(FrameBounds { lower, upper });
        }
    }
    Err(Error::NotControlledFrame(format!(
        "preconditioned operator has no positive real spectrum certificate (self-adjoint defect {:e})",
        report.self_adjoint_defect
    )))
}

pub fn solve_frame_equation(
    frame: &FrameSystem,
    g: &ModuleVector,
    cfg: &SolveConfig,
) -> Result<(ModuleVector, ConvergenceTrace)> {
    cfg.validate()?;
    frame.shape().check(g.shape())?;
    let controller = cfg.controller.as_ref();
    if let Some(c) = controller {
        frame.shape().check(c.shape())?;
    }
    let bounds = effective_bounds(frame, controller)?;
    let relaxation = cfg.relaxation.unwrap_or(2.0 / (bounds.lower + bounds.upper));
    if relaxation >= 2.0 / bounds.upper {
        return Err(Error::DivergentConfig(format!(
            "relaxation {relaxation} outside (0, {}) for effective upper bound {}",
            2.0 / bounds.upper,
            bounds.upper
        )));
    }
    let theoretical_rate = (1.0 - relaxation * bounds.lower)
        .abs()
        .max((1.0 - relaxation * bounds.upper).abs());

    let s = frame.frame_operator();
    let exact = s.inverse()?.apply(g)?;
    let g_norm = g.norm();
    let mut f = ModuleVector::zero(frame.shape());
    let mut residuals = vec![exact.norm()];
    let mut converged = g_norm == 0.0;
    let mut growth = 0;
    let step_scale = Complex64::new(relaxation, 0.0);
    while !converged && residuals.len() <= cfg.max_iters {
        let r = g.sub(&s.apply(&f)?)?;
        let step = match controller {
            Some(c) => c.operator().apply(&r)?,
            None => r,
        };
        f = f.add(&step.scale(step_scale))?;
        let err = f.sub(&exact)?.norm();
        let prev = *residuals.last().unwrap();
        residuals.push(err);
        if g.sub(&s.apply(&f)?)?.norm() <= cfg.target_residual * g_norm {
            converged = true;
            break;
        }
        growth = if err > prev { growth + 1 } else { 0 };
        if growth >= DIVERGENCE_WINDOW {
            return Err(Error::DivergentConfig(format!(
                "error grew for {DIVERGENCE_WINDOW} consecutive iterations"
            )));
        }
    }
    let iterations = residuals.len() - 1;
    let trace = ConvergenceTrace {
        measured_rate: measured_rate(&residuals),
        residuals,
        theoretical_rate,
        iterations,
        converged,
        relaxation,
        effective_bounds: bounds,
    };
    Ok((f, trace))
}

/// Geometric-mean contraction over the second half of the iterations that
/// stay above the rounding floor.
fn measured_rate(residuals: &[f64]) -> f64 {
    let r0 = residuals[0];
    if r0 == 0.0 || residuals.len() < 2 {
        return 0.0;
    }
    let floor = 1e-12 * r0;
    let usable = residuals.iter().take_while(|&&r| r > floor).count();
    if usable < 3 {
        return residuals[1] / r0;
    }
    let end = usable - 1;
    let start = end / 2;
    (residuals[end] / residuals[start]).powf(1.0 / (end - start) as f64)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchmarkRow {
    pub label: String,
    pub effective_bounds: Option<FrameBounds>,
    pub condition_number: Option<f64>,
    pub iterations: Option<usize>,
    pub converged: bool,
    pub measured_rate: Option<f64>,
    pub theoretical_rate: Option<f64>,
    pub error: Option<String>,
}

/// Runs the solver once without a controller (row 0, label `"identity"`)
/// and once per supplied controller, on a shared random right-hand side
/// drawn from `cfg.seed`. The `controller` field of `cfg` is ignored.
pub fn benchmark_preconditioning(
    frame: &FrameSystem,
    controllers: &[(String, Controller)],
    cfg: &SolveConfig,
) -> Result<Vec<BenchmarkRow>> {
    let mut rng = random::seeded(cfg.seed);
    let g = random::vector(frame.shape(), &mut rng);
    let mut rows = Vec::with_capacity(controllers.len() + 1);
    let runs = std::iter::once(("identity".to_string(), None))
        .chain(controllers.iter().map(|(l, c)| (l.clone(), Some(c.clone()))));
    for (label, controller) in runs {
        let run_cfg = SolveConfig {
            controller,
            ..cfg.clone()
        };
        rows.push(match solve_frame_equation(frame, &g, &run_cfg) {
            Ok((_, trace)) => BenchmarkRow {
                label,
                condition_number: Some(trace.effective_bounds.condition_number()),
                effective_bounds: Some(trace.effective_bounds),
                iterations: Some(trace.iterations),
                converged: trace.converged,
                measured_rate: Some(trace.measured_rate),
                theoretical_rate: Some(trace.theoretical_rate),
                error: None,
            },
            Err(e) => BenchmarkRow {
                label,
                effective_bounds: None,
                condition_number: None,
                iterations: None,
                converged: false,
                measured_rate: None,
                theoretical_rate: None,
                error: Some(e.to_string()),
            },
        });
    }
    Ok(rows)
}

/// A frame family where diagonal scaling matters: per block
/// `Q = D K D` with `K` a random well-conditioned positive matrix and `D`
/// diagonal with squared entries log-spaced over `[1, spread]`.
pub fn badly_scaled_frame<R: rand::Rng + ?Sized>(
    shape: &crate::module_space::ModuleShape,
    count: usize,
    spread: f64,
    rng: &mut R,
) -> Result<FrameSystem> {
    let target = shape
        .flat_dims()
        .map(|(_, n)| {
            let k_spec: Vec<f64> = (0..n).map(|i| 1.0 + 0.5 * i as f64 / (n.max(2) - 1) as f64).collect();
            let k = random::hermitian_with_spectrum(&k_spec, rng);
            let d = linalg::CMatrix::from_fn(n, n, |i, j| {
                if i == j {
                    let t = if n > 1 { i as f64 / (n - 1) as f64 } else { 0.0 };
                    Complex64::new(spread.powf(t).sqrt(), 0.0)
                } else {
                    Complex64::new(0.0, 0.0)
                }
            });
            linalg::hermitian_part(&(&d * k * &d))
        })
        .collect();
    let target = crate::module_space::ModuleOperator::from_block_mats(shape, target)?;
    random::frame(shape, count, rng)?.with_frame_operator(&target)
}

/// `S_C` for the solver's effective operator, exposed for diagnostics.
pub fn effective_operator(
    frame: &FrameSystem,
    controller: Option<&Controller>,
) -> Result<crate::module_space::ModuleOperator> {
    match controller {
        Some(c) => controlled_frame_operator(frame, c),
        None => Ok(frame.frame_operator().clone()),
    }
}
