//! Command-line front end. Exit codes: 0 pass, 1 check or assertion
//! failure, 2 usage, parse or input error.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use ordembed_core::analysis::{check_monotone, oracle_compare, schedule_invariance};
use ordembed_core::check_linear;
use ordembed_core::enumop::{OpError, TrialShape};
use ordembed_core::presentation::random_finite_diagram_in;
use ordembed_core::{EnumOperator, FiniteDiagram, Operator, OrderType, Presentation, Schedule};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::experiments::{self, Experiment};
use crate::facts::{parse_stages, write_stages};
use crate::report::{write_atomic, Config, Report};

pub const SEED_ENV: &str = "ORDEMBED_SEED";
/// Size of the fixed order streamed by `check schedule`.
pub const SCHEDULE_BASE: usize = 15;

#[derive(Debug, Parser)]
#[command(
    name = "ordembed",
    version,
    about = "Order types, presentations and enumeration operators"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate order-type expressions.
    #[command(subcommand)]
    Ot(OtCommand),
    /// Build presentations.
    #[command(subcommand)]
    Present(PresentCommand),
    /// Run operators over fact files or presentations.
    #[command(subcommand)]
    Op(OpCommand),
    /// Randomized operator checks; prints a JSON report.
    Check(CheckArgs),
    /// Seeded experiments.
    #[command(subcommand)]
    Exp(ExpCommand),
}

#[derive(Debug, Subcommand)]
pub enum OtCommand {
    Normalize { expr: String },
    Eq { left: String, right: String },
    Reverse { expr: String },
    Add { left: String, right: String },
    Mul { left: String, right: String },
}

#[derive(Debug, Subcommand)]
pub enum PresentCommand {
    /// Write stages `0..=N` of the standard presentation of a type.
    Build {
        #[arg(long = "type")]
        ty: String,
        #[arg(long, default_value = "standard")]
        schedule: String,
        #[arg(long, default_value_t = 20)]
        stages: usize,
        /// Defaults to standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
pub enum OpCommand {
    /// Apply an operator to every stage of a fact file or presentation.
    Run {
        #[arg(long)]
        op: String,
        #[arg(long = "in", conflicts_with = "ty", required_unless_present = "ty")]
        input: Option<PathBuf>,
        #[arg(long = "type")]
        ty: Option<String>,
        #[arg(long, default_value = "standard")]
        schedule: String,
        #[arg(long, default_value_t = 20)]
        stages: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CheckKind {
    Monotone,
    Linear,
    Schedule,
    Oracle,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    #[arg(value_enum)]
    pub kind: CheckKind,
    #[arg(long)]
    pub op: String,
    #[arg(long, default_value_t = 500)]
    pub trials: usize,
    #[arg(long, env = SEED_ENV, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub report: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum ExpCommand {
    /// Run one experiment and print or save its report.
    Run {
        id: String,
        /// Defaults to the experiment's own stage count.
        #[arg(long)]
        stages: Option<usize>,
        #[arg(long, env = SEED_ENV, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// List experiment identifiers.
    List,
}

enum Failure {
    /// Exit code 1.
    Check(String),
    /// Exit code 2.
    Input(String),
}

type Outcome = Result<(), Failure>;

fn input<E: std::fmt::Display>(context: &str) -> impl FnOnce(E) -> Failure + '_ {
    move |e| Failure::Input(format!("{context}: {e}"))
}

/// Parses `args` (including the program name), runs the command and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match execute(cli.command, out) {
        Ok(()) => 0,
        Err(Failure::Check(msg)) => {
            let _ = writeln!(err, "{msg}");
            1
        }
        Err(Failure::Input(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
    }
}

fn execute(command: Command, out: &mut dyn Write) -> Outcome {
    match command {
        Command::Ot(c) => ot(c, out),
        Command::Present(PresentCommand::Build {
            ty,
            schedule,
            stages,
            out: path,
        }) => {
            let p = presentation(&ty, &schedule)?;
            let diagrams: Vec<FiniteDiagram> = p.stages(stages).collect();
            emit(
                path.as_deref(),
                &write_stages(diagrams.iter().enumerate()),
                out,
            )
        }
        Command::Op(OpCommand::Run {
            op,
            input: file,
            ty,
            schedule,
            stages,
            out: path,
        }) => {
            let op = operator(&op)?;
            let inputs: Vec<(usize, FiniteDiagram)> = match (file, ty) {
                (Some(file), _) => {
                    let text = std::fs::read_to_string(&file)
                        .map_err(input(&file.display().to_string()))?;
                    parse_stages(&text).map_err(input(&file.display().to_string()))?
                }
                (None, Some(ty)) => presentation(&ty, &schedule)?
                    .stages(stages)
                    .enumerate()
                    .collect(),
                (None, None) => {
                    return Err(Failure::Input("one of --in or --type is required".into()))
                }
            };
            let mut outputs = Vec::with_capacity(inputs.len());
            for (s, d) in &inputs {
                match op.apply(d) {
                    Ok(o) => outputs.push((*s, o)),
                    Err(e @ OpError::BudgetExceeded { .. }) => {
                        eprintln!("stopped at stage {s}: {e}");
                        break;
                    }
                    Err(e) => return Err(Failure::Input(format!("stage {s}: {e}"))),
                }
            }
            emit(
                path.as_deref(),
                &write_stages(outputs.iter().map(|(s, d)| (*s, d))),
                out,
            )
        }
        Command::Check(args) => check(args, out),
        Command::Exp(ExpCommand::List) => {
            for id in experiments::ALL {
                writeln!(out, "{id}").map_err(input("stdout"))?;
            }
            Ok(())
        }
        Command::Exp(ExpCommand::Run {
            id,
            stages,
            seed,
            report,
        }) => {
            let exp: Experiment = id.parse().map_err(|e| Failure::Input(format!("{e}")))?;
            let config = Config::new(seed, stages.unwrap_or_else(|| exp.default_stages()));
            let r = exp
                .run(&config)
                .map_err(|e| Failure::Input(format!("{e}")))?;
            finish(r, report.as_deref(), out)
        }
    }
}

fn expr(text: &str) -> Result<OrderType, Failure> {
    text.parse().map_err(input(text))
}

fn ot(c: OtCommand, out: &mut dyn Write) -> Outcome {
    let line = match c {
        OtCommand::Normalize { expr: e } => expr(&e)?.normalize().map_err(input(&e))?.to_string(),
        OtCommand::Eq { left, right } => expr(&left)?
            .equal(&expr(&right)?)
            .map_err(input("eq"))?
            .to_string(),
        OtCommand::Reverse { expr: e } => expr(&e)?
            .reverse()
            .normalize()
            .map_err(input(&e))?
            .to_string(),
        OtCommand::Add { left, right } => expr(&left)?
            .add(&expr(&right)?)
            .map_err(input("add"))?
            .to_string(),
        OtCommand::Mul { left, right } => expr(&left)?
            .mul(&expr(&right)?)
            .map_err(input("mul"))?
            .to_string(),
    };
    writeln!(out, "{line}").map_err(input("stdout"))
}

fn operator(id: &str) -> Result<Operator, Failure> {
    id.parse().map_err(input("--op"))
}

fn presentation(ty: &str, schedule: &str) -> Result<Presentation, Failure> {
    let schedule: Schedule = schedule.parse().map_err(input("--schedule"))?;
    Presentation::standard(&expr(ty)?, schedule).map_err(input("--type"))
}

fn emit(path: Option<&Path>, text: &str, out: &mut dyn Write) -> Outcome {
    match path {
        Some(path) => {
            write_atomic(path, text.as_bytes()).map_err(input(&path.display().to_string()))
        }
        None => out.write_all(text.as_bytes()).map_err(input("stdout")),
    }
}

fn finish(report: Report, path: Option<&Path>, out: &mut dyn Write) -> Outcome {
    emit(path, &report.to_json(), out)?;
    if report.passed() {
        return Ok(());
    }
    let failed: Vec<String> = report
        .failed_assertions()
        .map(|a| format!("{}: {}", a.name, a.detail))
        .collect();
    Err(Failure::Check(format!(
        "{} failed:\n  {}",
        report.check,
        failed.join("\n  ")
    )))
}

fn check(args: CheckArgs, out: &mut dyn Write) -> Outcome {
    let op = operator(&args.op)?;
    let shape = TrialShape::for_operator(&op);
    let kind = format!("{:?}", args.kind).to_lowercase();
    let mut report = Report::new(kind.clone(), Config::new(args.seed, 0));
    report.operator = op.to_string();
    report.presentation = format!(
        "random diagrams of at most {} elements below {}",
        shape.max_size, shape.name_bound
    );
    match args.kind {
        CheckKind::Monotone => {
            let r = check_monotone(&op, shape, args.trials, args.seed);
            report.assert(
                "monotone",
                r.passed(),
                format!(
                    "{} trials, {} violations, {} errors",
                    r.trials, r.violations, r.errors
                ),
            );
            report.evidence("monotonicity", r);
        }
        CheckKind::Oracle => {
            let r = oracle_compare(&op, shape, args.trials, args.seed);
            report.assert(
                "agrees with naive recomputation",
                r.passed(),
                format!("{} trials, {} mismatches", r.trials, r.mismatches),
            );
            report.evidence("oracle", r);
        }
        CheckKind::Linear => {
            let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
            let (mut bad, mut errors, mut first) = (0usize, 0usize, None);
            for _ in 0..args.trials {
                let d = random_finite_diagram_in(
                    rng.gen_range(0..=shape.max_size),
                    shape.name_bound,
                    rng.gen(),
                );
                match op.apply(&d) {
                    Ok(o) => {
                        if let Err(e) = check_linear(&o.to_facts()) {
                            bad += 1;
                            first.get_or_insert(e.to_string());
                        }
                    }
                    Err(_) => errors += 1,
                }
            }
            report.assert(
                "outputs are strict total orders",
                bad == 0 && errors == 0,
                format!("{} trials, {bad} not linear, {errors} refused", args.trials),
            );
            report.evidence("first violation", first);
        }
        CheckKind::Schedule => {
            let base = if op.is_explosive() {
                random_finite_diagram_in(shape.max_size, shape.name_bound, args.seed)
            } else {
                random_finite_diagram_in(SCHEDULE_BASE, 2 * SCHEDULE_BASE as u64, args.seed)
            };
            let r = schedule_invariance(&op, &base, args.trials, args.seed);
            report.assert(
                "final output independent of schedule",
                r.passed(),
                format!("{} schedules, {} mismatches", r.schedules, r.mismatches),
            );
            report.evidence("schedule invariance", r);
        }
    }
    finish(report, args.report.as_deref(), out)
}
