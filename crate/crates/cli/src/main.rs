//! `nvcalc`: runs verification tasks from JSON files and prints a report.
//!
//! Exit codes: 0 all checks pass, 1 some check failed, 2 malformed input,
//! 3 insufficient precision, 4 other domain errors.

mod bv;
mod error;
mod gw;
mod ode;
mod operad;
mod task;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::Value;

use crate::bv::BvCheck;
use crate::error::CliError;
use crate::operad::Action;
use crate::task::{parse_trunc, Outcome, OutputFormat, Run, TaskFile, TaskKind};

#[derive(Debug, Parser)]
#[command(name = "nvcalc", version, about = "Exact verification of Novikov-series identities")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Common {
    /// Payload or task file (JSON).
    file: PathBuf,
    /// Report format; overrides the task file.
    #[arg(long, value_enum)]
    output: Option<OutputFormat>,
    /// Truncate every input series at `q^t` (`p/q` or `inf`); overrides the task file.
    #[arg(long)]
    trunc: Option<String>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Equation chain, solver and Schwarzian checks.
    Ode(Common),
    /// Quantum-product relations, (psi, eta) and Gauss-Manin.
    Gw(Common),
    /// Mirror-side equations in `h`.
    Mirror(Common),
    /// BV algebra with connection.
    Bv {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        axioms: bool,
        #[arg(long)]
        leibniz: bool,
        #[arg(long = "delta-nabla")]
        delta_nabla: bool,
        #[arg(long)]
        gauge: bool,
        #[arg(long)]
        bs: bool,
        #[arg(long = "second-order")]
        second_order: bool,
    },
    /// Disc configurations and signed composition.
    Operad {
        #[arg(value_enum)]
        action: Action,
        #[command(flatten)]
        common: Common,
    },
    /// A task file naming its own task.
    Run(Common),
}

fn load(path: &Path) -> Result<Value, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::parse(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::parse(format!("{}: {e}", path.display())))
}

struct Request {
    kind: Option<TaskKind>,
    bv_checks: Vec<BvCheck>,
    action: Option<Action>,
}

fn execute(common: &Common, req: &Request) -> (Outcome, OutputFormat) {
    let mut fmt = common.output.unwrap_or_default();
    let mut task = req.kind.unwrap_or(TaskKind::Ode);
    let mut run = Run::new(None);
    let res = (|| -> Result<(), CliError> {
        let tf = TaskFile::from_value(load(&common.file)?, req.kind)?;
        task = tf.task;
        fmt = common.output.or(tf.output).unwrap_or_default();
        let trunc = common.trunc.clone().or(tf.trunc);
        run.trunc = trunc.as_deref().map(parse_trunc).transpose()?;
        match tf.task {
            TaskKind::Ode => ode::run_ode(tf.payload, &mut run),
            TaskKind::Mirror => ode::run_mirror(tf.payload, &mut run),
            TaskKind::Gw => gw::run_gw(tf.payload, &mut run),
            TaskKind::Bv => bv::run_bv(tf.payload, &req.bv_checks, &mut run),
            TaskKind::Operad => operad::run_operad(tf.payload, req.action, &mut run),
        }
    })();
    (Outcome { task, run, error: res.err() }, fmt)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let plain = |kind| Request { kind, bv_checks: Vec::new(), action: None };
    let (common, req) = match &cli.command {
        Command::Ode(c) => (c, plain(Some(TaskKind::Ode))),
        Command::Gw(c) => (c, plain(Some(TaskKind::Gw))),
        Command::Mirror(c) => (c, plain(Some(TaskKind::Mirror))),
        Command::Run(c) => (c, plain(None)),
        Command::Operad { action, common } => {
            (common, Request { kind: Some(TaskKind::Operad), bv_checks: Vec::new(), action: Some(*action) })
        }
        Command::Bv { common, axioms, leibniz, delta_nabla, gauge, bs, second_order } => {
            let flags = [
                (*axioms, BvCheck::Axioms),
                (*leibniz, BvCheck::Leibniz),
                (*delta_nabla, BvCheck::DeltaNabla),
                (*gauge, BvCheck::Gauge),
                (*bs, BvCheck::Bs),
                (*second_order, BvCheck::SecondOrder),
            ];
            let bv_checks = flags.iter().filter(|(on, _)| *on).map(|(_, c)| *c).collect();
            (common, Request { kind: Some(TaskKind::Bv), bv_checks, action: None })
        }
    };
    let (outcome, fmt) = execute(common, &req);
    print!("{}", outcome.render(fmt));
    if let Some(e) = &outcome.error {
        eprintln!("nvcalc: {} error: {e}", e.kind());
    }
    ExitCode::from(outcome.exit_code())
}
