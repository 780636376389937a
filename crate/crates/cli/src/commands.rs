use std::path::{Path, PathBuf};

use serde_json::json;

use csframe::controlled::{
    controlled_characterization_check, is_controlled_frame, verify_commutation, verify_controlled_operator_properties,
    verify_self_adjoint_controller_equivalence, Controller, CONTROLLED_TOL,
};
use csframe::multipliers::{
    controlled_multiplier, extract_diagonal_controller, is_w_frame, multiplier, multiplier_norm_bound,
    semi_normalized_witness, verify_multiplier_as_frame_operator, verify_reweighting,
    verify_weighted_frame_equivalences, Symbol,
};
use csframe::random::{self, seeded};
use csframe::solver::{benchmark_preconditioning, solve_frame_equation, SolveConfig};
use csframe::{frames, AlgebraShape, FrameSystem, ModuleShape, ModuleVector, DEFAULT_TOL};

use crate::report::{emit, load, to_json, CliError, CliResult, RunReport};
use crate::{Battery, Cli, Command, ControllerKind, GenArgs, GenKind, IterArgs, SolveArgs, VerifyArgs};

const RECONSTRUCTION_TOL: f64 = 1e-8;

pub fn run(cli: &Cli) -> CliResult<Option<RunReport>> {
    match &cli.command {
        Command::Gen(args) => gen(args, cli.out.as_ref()).map(|()| None),
        Command::Check { frame, controller } => check(cli, frame, controller.as_deref()).map(Some),
        Command::Bounds { frame } => bounds(cli, frame).map(Some),
        Command::Dual { frame, dual_out } => dual(cli, frame, dual_out.as_ref()).map(Some),
        Command::Mult {
            symbol,
            frame,
            synthesis,
            controller,
            operator_out,
        } => mult(
            cli,
            symbol,
            frame,
            synthesis.as_deref(),
            controller.as_deref(),
            operator_out.as_ref(),
        )
        .map(Some),
        Command::Wframe { frame, symbol } => wframe(cli, frame, symbol).map(Some),
        Command::Verify(args) => verify(cli, args).map(Some),
        Command::Solve(args) => solve(args).map(Some),
        Command::Bench {
            frame,
            controller,
            iter,
        } => bench(frame, controller, iter).map(Some),
    }
}

fn details<T: serde::Serialize>(value: &T) -> serde_json::Value {
    serde_json::to_value(value).expect("serializable report")
}

fn module_shape(blocks: &[usize], rank: usize) -> CliResult<ModuleShape> {
    Ok(ModuleShape::new(AlgebraShape::new(blocks.to_vec())?, rank)?)
}

fn range(args: &GenArgs, default: (f64, f64)) -> CliResult<(f64, f64)> {
    let (lo, hi) = match &args.range {
        Some(r) => (r[0], r[1]),
        None => default,
    };
    if !(lo.is_finite() && hi.is_finite() && lo <= hi) {
        return Err(CliError::Parse(format!("invalid range [{lo}, {hi}]")));
    }
    Ok((lo, hi))
}

fn gen(args: &GenArgs, out: Option<&PathBuf>) -> CliResult<()> {
    let mut rng = seeded(args.seed);
    let text = match args.kind {
        GenKind::Frame => {
            let shape = module_shape(&args.blocks, args.rank)?;
            let frame = match args.condition {
                Some(k) => random::frame_with_bounds(&shape, args.count, 1.0, k, &mut rng)?,
                None => random::frame(&shape, args.count, &mut rng)?,
            };
            to_json(&frame)
        }
        GenKind::Symbol => {
            let (lo, hi) = range(args, (1.0, 2.0))?;
            let a = AlgebraShape::new(args.blocks.clone())?;
            to_json(&random::real_symbol(&a, args.count, lo, hi, &mut rng)?)
        }
        GenKind::Controller => {
            let ctl = match args.controller_kind {
                ControllerKind::SelfAdjoint => {
                    let (lo, hi) = range(args, (0.5, 2.0))?;
                    let shape = module_shape(&args.blocks, args.rank)?;
                    Controller::new(random::self_adjoint_operator(&shape, lo, hi, &mut rng))?
                }
                ControllerKind::Central => {
                    let (lo, hi) = range(args, (0.5, 2.0))?;
                    let shape = module_shape(&args.blocks, args.rank)?;
                    let w = random::real_symbol(shape.algebra(), 1, lo, hi, &mut rng)?;
                    Controller::central(&shape, w.value(0))?
                }
                ControllerKind::Poly => {
                    let path = args
                        .frame
                        .as_ref()
                        .ok_or_else(|| CliError::Parse("--controller-kind poly needs --frame".into()))?;
                    let frame: FrameSystem = load(path, &mut RunReport::new("gen"))?;
                    Controller::polynomial_in_frame_operator(&frame, &args.coeffs)?
                }
            };
            to_json(&ctl)
        }
    };
    emit(out, &text)
}

fn resolve_controller(spec: &str, frame: &FrameSystem, report: &mut RunReport) -> CliResult<Controller> {
    match spec {
        "identity" => Ok(Controller::identity(frame.shape())),
        "jacobi" => Ok(Controller::jacobi(frame)?),
        "inverse" => Ok(Controller::inverse_frame_operator(frame)?),
        path => {
            let c: Controller = load(Path::new(path), report)?;
            frame.shape().check(c.shape())?;
            Ok(c)
        }
    }
}

fn require<'a, T>(value: Option<&'a T>, flag: &str) -> CliResult<&'a T>
where
    T: ?Sized,
{
    value.ok_or_else(|| CliError::Parse(format!("this command needs --{flag}")))
}

fn check(cli: &Cli, frame_path: &Path, controller: Option<&str>) -> CliResult<RunReport> {
    let mut report = RunReport::new("check");
    let frame: FrameSystem = load(frame_path, &mut report)?;
    match controller {
        None => {
            let tol = cli.tol.unwrap_or(DEFAULT_TOL);
            report = report.tol("frame", tol);
            let b = frame.optimal_bounds();
            report.pass = frame.is_frame(tol);
            report.details = json!({ "is_frame": report.pass, "bounds": b, "len": frame.len() });
        }
        Some(spec) => {
            let tol = cli.tol.unwrap_or(CONTROLLED_TOL);
            report = report.tol("controlled_frame", tol);
            let c = resolve_controller(spec, &frame, &mut report)?;
            let r = is_controlled_frame(&frame, &c, tol)?;
            report.pass = r.is_controlled_frame;
            report.details = details(&r);
        }
    }
    Ok(report)
}

fn bounds(cli: &Cli, frame_path: &Path) -> CliResult<RunReport> {
    let mut report = RunReport::new("bounds");
    let frame: FrameSystem = load(frame_path, &mut report)?;
    let tol = cli.tol.unwrap_or(DEFAULT_TOL);
    report = report.tol("frame", tol);
    report.pass = frame.is_frame(tol);
    report.details = details(&frame.optimal_bounds());
    Ok(report)
}

fn dual(cli: &Cli, frame_path: &Path, dual_out: Option<&PathBuf>) -> CliResult<RunReport> {
    let mut report = RunReport::new("dual");
    let frame: FrameSystem = load(frame_path, &mut report)?;
    let tol = cli.tol.unwrap_or(RECONSTRUCTION_TOL);
    report = report.tol("duality", tol);
    let dual = frame.canonical_dual()?;
    let residual = frames::duality_residual(&frame, &dual)?;
    report.pass = residual <= tol;
    report.details = json!({ "duality_residual": residual, "dual_bounds": dual.optimal_bounds() });
    if let Some(p) = dual_out {
        emit(Some(p), &to_json(&dual))?;
    }
    Ok(report)
}

fn mult(
    cli: &Cli,
    symbol: &Path,
    frame_path: &Path,
    synthesis: Option<&Path>,
    controller: Option<&str>,
    operator_out: Option<&PathBuf>,
) -> CliResult<RunReport> {
    let mut report = RunReport::new("mult");
    let m: Symbol = load(symbol, &mut report)?;
    let f: FrameSystem = load(frame_path, &mut report)?;
    let g: FrameSystem = match synthesis {
        Some(p) => load(p, &mut report)?,
        None => f.clone(),
    };
    let tol = cli.tol.unwrap_or(DEFAULT_TOL);
    report = report.tol("norm_bound", tol);
    let op = match controller {
        Some(spec) => {
            let c = resolve_controller(spec, &f, &mut report)?;
            controlled_multiplier(&m, &f, &g, &c)?
        }
        None => multiplier(&m, &f, &g)?,
    };
    let bound = multiplier_norm_bound(&m, &f, &g);
    let norm = op.norm();
    report.pass = controller.is_some() || norm <= bound * (1.0 + tol) + tol;
    report.details = json!({
        "norm": norm,
        "norm_bound": bound,
        "self_adjoint_defect": op.self_adjoint_defect(),
        "min_singular_value": op.min_singular_value(),
    });
    if let Some(p) = operator_out {
        emit(Some(p), &to_json(&op))?;
    }
    Ok(report)
}

fn wframe(cli: &Cli, frame_path: &Path, symbol: &Path) -> CliResult<RunReport> {
    let mut report = RunReport::new("wframe");
    let frame: FrameSystem = load(frame_path, &mut report)?;
    let w: Symbol = load(symbol, &mut report)?;
    let tol = cli.tol.unwrap_or(DEFAULT_TOL);
    report = report.tol("frame", tol);
    let witness = semi_normalized_witness(&w, DEFAULT_TOL)?;
    let (is_w, b) = is_w_frame(&frame, &w, tol)?;
    report.pass = is_w;
    report.details = json!({ "is_w_frame": is_w, "bounds": b, "witness": witness });
    Ok(report)
}

fn verify(cli: &Cli, args: &VerifyArgs) -> CliResult<RunReport> {
    let name = args.battery.to_possible_value_name();
    let mut report = RunReport::new(&format!("verify {name}"));
    report.seed = Some(args.seed);
    let frame: FrameSystem = load(&args.frame, &mut report)?;
    let controller = |report: &mut RunReport| -> CliResult<Controller> {
        let spec = require(args.controller.as_deref(), "controller")?;
        resolve_controller(spec, &frame, report)
    };
    let symbol = |report: &mut RunReport| -> CliResult<Symbol> {
        let path = require(args.symbol.as_deref(), "symbol")?;
        load(path, report)
    };
    match args.battery {
        Battery::ControlledOperator => {
            let tol = cli.tol.unwrap_or(DEFAULT_TOL);
            let c = controller(&mut report)?;
            let r = verify_controlled_operator_properties(&frame, &c, tol)?;
            report = report.tol("relative", tol).tol("acceptance", CONTROLLED_TOL);
            report.pass = r.pass;
            report.details = details(&r);
        }
        Battery::Commutation => {
            let tol = cli.tol.unwrap_or(CONTROLLED_TOL);
            let c = controller(&mut report)?;
            let r = verify_commutation(&frame, &c, args.samples, args.seed, tol)?;
            report = report.tol("relative", tol).tol("acceptance", CONTROLLED_TOL);
            report.pass = r.pass;
            report.details = details(&r);
        }
        Battery::SelfAdjointController => {
            let tol = cli.tol.unwrap_or(CONTROLLED_TOL);
            let c = controller(&mut report)?;
            let r = verify_self_adjoint_controller_equivalence(&frame, &c, tol)?;
            report = report.tol("relative", tol);
            report.pass = r.agree;
            report.details = json!({ "right_side": r.right_side(), "report": r });
        }
        Battery::FrameNorm => {
            let tol = cli.tol.unwrap_or(1e-9);
            let r = frame.norm_characterization_check(args.samples, args.seed, tol)?;
            report = report.tol("margin", tol);
            report.pass = r.pass;
            report.details = details(&r);
        }
        Battery::ControlledNorm => {
            let tol = cli.tol.unwrap_or(1e-9);
            let c = controller(&mut report)?;
            let r = controlled_characterization_check(&frame, &c, args.samples, args.seed, tol)?;
            report = report.tol("margin", tol).tol("acceptance", CONTROLLED_TOL);
            report.pass = r.pass;
            report.details = details(&r);
        }
        Battery::Reweighting => {
            let tol = cli.tol.unwrap_or(1e-9);
            let w = symbol(&mut report)?;
            let r = verify_reweighting(&frame, &w, tol)?;
            report = report.tol("bracket", tol);
            report.pass = r.pass;
            report.details = details(&r);
        }
        Battery::MultiplierFrameOperator => {
            let tol = cli.tol.unwrap_or(DEFAULT_TOL);
            let w = symbol(&mut report)?;
            let r = verify_multiplier_as_frame_operator(&frame, &w, tol)?;
            report = report.tol("relative", tol);
            report.pass = r.pass;
            report.details = details(&r);
        }
        Battery::WeightedEquivalence => {
            let tol = cli.tol.unwrap_or(DEFAULT_TOL);
            let w = symbol(&mut report)?;
            let extra = args.samples.min(20);
            let r = verify_weighted_frame_equivalences(&frame, &w, extra, args.seed, tol)?;
            report = report.tol("frame", tol);
            report.pass = r.agree;
            report.details = json!({ "predicates": r.predicates(), "report": r });
        }
        Battery::DiagonalController => {
            let tol = cli.tol.unwrap_or(1e-9);
            let c = controller(&mut report)?;
            let r = extract_diagonal_controller(&frame, &c, tol)?;
            report = report
                .tol("reconstruction", tol)
                .tol("diagonality", csframe::multipliers::DIAGONALITY_TOL);
            report.pass = r.pass;
            report.details = details(&r);
        }
    }
    Ok(report)
}

fn solve_config(iter: &IterArgs, controller: Option<Controller>) -> SolveConfig {
    SolveConfig {
        max_iters: iter.max_iters,
        target_residual: iter.target,
        relaxation: iter.relax,
        controller,
        seed: iter.seed,
    }
}

fn solve(args: &SolveArgs) -> CliResult<RunReport> {
    let mut report = RunReport::new("solve").tol("target_residual", args.iter.target);
    report.seed = Some(args.iter.seed);
    let frame: FrameSystem = load(&args.frame, &mut report)?;
    let g: ModuleVector = match &args.rhs {
        Some(p) => load(p, &mut report)?,
        None => random::vector(frame.shape(), &mut seeded(args.iter.seed)),
    };
    let controller = match &args.controller {
        Some(spec) => Some(resolve_controller(spec, &frame, &mut report)?),
        None => None,
    };
    let (f, trace) = solve_frame_equation(&frame, &g, &solve_config(&args.iter, controller))?;
    if let Some(p) = &args.trace {
        write_trace(p, &trace)?;
    }
    if let Some(p) = &args.solution_out {
        emit(Some(p), &to_json(&f))?;
    }
    let residual = frame.frame_operator().apply(&f)?.sub(&g)?.norm() / g.norm().max(f64::MIN_POSITIVE);
    report.pass = trace.converged;
    report.details = json!({
        "iterations": trace.iterations,
        "converged": trace.converged,
        "relative_residual": residual,
        "measured_rate": trace.measured_rate,
        "theoretical_rate": trace.theoretical_rate,
        "relaxation": trace.relaxation,
        "effective_bounds": trace.effective_bounds,
    });
    Ok(report)
}

fn write_trace(path: &Path, trace: &csframe::ConvergenceTrace) -> CliResult<()> {
    let io = |e: csv::Error| CliError::Parse(format!("{}: {e}", path.display()));
    let mut w = csv::Writer::from_path(path).map_err(io)?;
    w.write_record(["iter", "residual", "ratio"]).map_err(io)?;
    for (k, r, ratio) in trace.rows() {
        let ratio = if ratio.is_nan() {
            String::new()
        } else {
            ratio.to_string()
        };
        w.write_record([k.to_string(), r.to_string(), ratio]).map_err(io)?;
    }
    w.flush()
        .map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))
}

fn bench(frame_path: &Path, controllers: &[String], iter: &IterArgs) -> CliResult<RunReport> {
    let mut report = RunReport::new("bench").tol("target_residual", iter.target);
    report.seed = Some(iter.seed);
    let frame: FrameSystem = load(frame_path, &mut report)?;
    let specs: Vec<String> = if controllers.is_empty() {
        vec!["jacobi".into(), "inverse".into()]
    } else {
        controllers.to_vec()
    };
    let mut list = Vec::new();
    for spec in &specs {
        list.push((spec.clone(), resolve_controller(spec, &frame, &mut report)?));
    }
    let rows = benchmark_preconditioning(&frame, &list, &solve_config(iter, None))?;
    report.pass = rows.iter().all(|r| r.error.is_none() && r.converged);
    report.details = json!({ "rows": rows });
    Ok(report)
}

trait PossibleValueName {
    fn to_possible_value_name(&self) -> String;
}

impl PossibleValueName for Battery {
    fn to_possible_value_name(&self) -> String {
        use clap::ValueEnum;
        self.to_possible_value()
            .expect("no skipped variants")
            .get_name()
            .to_string()
    }
}
