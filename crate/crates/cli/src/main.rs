mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use report::{emit, to_json};

/// Frames, controlled frames and multipliers in Hilbert C*-modules over
/// finite-dimensional C*-algebras.
///
/// Every command prints a JSON report. Exit status: 0 when the check
/// passes, 1 when it fails, 2 on unreadable input or invalid parameters,
/// 3 when input shapes are inconsistent.
#[derive(Debug, Parser)]
#[command(name = "csframe", version)]
pub struct Cli {
    /// Tolerance override for the command's main check. Defaults: 1e-10
    /// for frame, bound and multiplier checks, 1e-9 for controlled-frame
    /// checks, 1e-8 for reconstruction.
    #[arg(long, global = true, env = "CSFRAME_TOL")]
    pub tol: Option<f64>,

    /// Write the report (or generated file) here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a random frame, controller or symbol file.
    Gen(GenArgs),
    /// Decide whether a system is a frame, or a controlled frame.
    Check {
        frame: PathBuf,
        #[arg(long)]
        controller: Option<String>,
    },
    /// Optimal frame bounds.
    Bounds { frame: PathBuf },
    /// Canonical dual frame; the dual file goes to --dual-out when given.
    Dual {
        frame: PathBuf,
        #[arg(long)]
        dual_out: Option<PathBuf>,
    },
    /// Multiplier M_{m,F,G} (G defaults to F), optionally controlled.
    Mult {
        symbol: PathBuf,
        frame: PathBuf,
        #[arg(long)]
        synthesis: Option<PathBuf>,
        #[arg(long)]
        controller: Option<String>,
        #[arg(long)]
        operator_out: Option<PathBuf>,
    },
    /// Weighted-frame test for a frame and weights.
    Wframe { frame: PathBuf, symbol: PathBuf },
    /// Run one of the named verification batteries.
    Verify(VerifyArgs),
    /// Solve S f = g with preconditioned Richardson iteration.
    Solve(SolveArgs),
    /// Compare controllers as preconditioners; the plain iteration is always row 0.
    Bench {
        frame: PathBuf,
        /// File or identity|jacobi|inverse; repeatable. Default: jacobi and inverse.
        #[arg(long)]
        controller: Vec<String>,
        #[command(flatten)]
        iter: IterArgs,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum GenKind {
    Frame,
    Controller,
    Symbol,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum ControllerKind {
    /// Random self-adjoint operator with spectrum in --range.
    SelfAdjoint,
    /// Block scalars drawn from --range.
    Central,
    /// Polynomial in the frame operator of --frame with coefficients --coeffs.
    Poly,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    pub kind: GenKind,
    /// Block dimensions of the algebra, comma separated.
    #[arg(long, value_delimiter = ',', default_value = "1")]
    pub blocks: Vec<usize>,
    #[arg(long, default_value_t = 1)]
    pub rank: usize,
    /// Number of frame vectors or symbol entries.
    #[arg(long, default_value_t = 1)]
    pub count: usize,
    /// Value range: symbol weights, or controller spectrum.
    #[arg(long, num_args = 2, value_names = ["LO", "HI"])]
    pub range: Option<Vec<f64>>,
    /// Target condition number D/C of a generated frame (lower bound 1).
    #[arg(long)]
    pub condition: Option<f64>,
    #[arg(long, value_enum, default_value_t = ControllerKind::SelfAdjoint)]
    pub controller_kind: ControllerKind,
    #[arg(long)]
    pub frame: Option<PathBuf>,
    #[arg(long, value_delimiter = ',', default_value = "1,1")]
    pub coeffs: Vec<f64>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Battery {
    /// Controlled frame operator: adjoint identity, positive, invertible.
    #[value(name = "prop_3_4")]
    ControlledOperator,
    /// Commutation CS = SC* and the two summation forms.
    #[value(name = "prop_3_9")]
    Commutation,
    /// Self-adjoint controller biconditional.
    #[value(name = "prop_3_10")]
    SelfAdjointController,
    /// Norm characterization of frames.
    #[value(name = "thm_2_1")]
    FrameNorm,
    /// Norm characterization of controlled frames.
    #[value(name = "thm_3_6")]
    ControlledNorm,
    /// Reweighting bracket and dual pair.
    #[value(name = "lemma_4_6")]
    Reweighting,
    /// Multiplier with semi-normalized symbol as a frame operator.
    #[value(name = "lemma_4_7")]
    MultiplierFrameOperator,
    /// Six weighted-frame conditions agree.
    #[value(name = "thm_4_8")]
    WeightedEquivalence,
    /// Controller diagonal on the frame is a multiplier.
    #[value(name = "prop_4_4")]
    DiagonalController,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    pub battery: Battery,
    #[arg(long)]
    pub frame: PathBuf,
    /// File or identity|jacobi|inverse.
    #[arg(long)]
    pub controller: Option<String>,
    #[arg(long)]
    pub symbol: Option<PathBuf>,
    /// Random vectors (or extra symbols) sampled by batteries that sample.
    #[arg(long, default_value_t = 100)]
    pub samples: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct IterArgs {
    #[arg(long, default_value_t = 10_000)]
    pub max_iters: usize,
    /// Relative residual ‖Sf − g‖/‖g‖ at which to stop.
    #[arg(long, default_value_t = 1e-10)]
    pub target: f64,
    /// Relaxation λ; defaults to 2/(C+D) of the effective operator.
    #[arg(long)]
    pub relax: Option<f64>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    pub frame: PathBuf,
    /// Right-hand side vector file; random from --seed when absent.
    #[arg(long)]
    pub rhs: Option<PathBuf>,
    /// File or identity|jacobi|inverse.
    #[arg(long)]
    pub controller: Option<String>,
    /// CSV trace with columns iter,residual,ratio.
    #[arg(long)]
    pub trace: Option<PathBuf>,
    #[arg(long)]
    pub solution_out: Option<PathBuf>,
    #[command(flatten)]
    pub iter: IterArgs,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(Some(report)) => {
            let code = u8::from(!report.pass);
            if let Err(e) = emit(cli.out.as_ref(), &to_json(&report)) {
                eprintln!("error: {}", e.message());
                return ExitCode::from(e.exit_code() as u8);
            }
            ExitCode::from(code)
        }
        Ok(None) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
