use std::process::ExitCode;

use clap::{Parser, Subcommand};
use zhu_lab::commands::{gdim, induce, omega, selfcheck, zhu, Ctx};
use zhu_lab::config::{RunArgs, RunConfig};
use zhu_lab::error::{CliError, CliResult};
use zhu_lab::report::{render, Report};

/// Exact computations with level-n Zhu algebras and the induced-module functors.
///
/// Exit status: 0 all checks passed, 1 negative verdict, 2 usage or config error,
/// 3 instability (without --allow-unstable).
#[derive(Parser, Debug)]
#[command(name = "zhu-lab", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Truncated presentation of A_n(V) with relation certificates
    Zhu(RunArgs),
    /// Induce L_n(U) from a module spec and report its structure
    Induce(RunArgs),
    /// Omega_n of a module inside the degree window
    Omega(RunArgs),
    /// Generalized graded dimension of a module
    Gdim(RunArgs),
    /// Induce and compare Omega_n/Omega_(n-1) with U
    Roundtrip(RunArgs),
    /// Recompute a fixed set of known results
    Selfcheck(RunArgs),
}

fn emit<R: Report>(report: R, cfg: &RunConfig) -> CliResult<u8> {
    print!("{}", render(&report, cfg.format)?);
    let status = report.status();
    if let Some(u) = status.unstable.as_ref().filter(|_| !cfg.allow_unstable) {
        eprintln!("zhu-lab: unstable: {u}");
    }
    Ok(status.exit_code(cfg.allow_unstable))
}

fn with_ctx<R: Report>(args: RunArgs, f: impl FnOnce(&Ctx) -> CliResult<R>) -> CliResult<u8> {
    let ctx = Ctx::new(RunConfig::resolve(args)?);
    let report = f(&ctx)?;
    emit(report, &ctx.config)
}

fn run(cli: Cli) -> CliResult<u8> {
    match cli.command {
        Command::Zhu(a) => with_ctx(a, zhu::run),
        Command::Induce(a) => with_ctx(a, induce::run),
        Command::Omega(a) => with_ctx(a, omega::run),
        Command::Gdim(a) => with_ctx(a, gdim::run),
        Command::Roundtrip(a) => with_ctx(a, induce::run_roundtrip),
        Command::Selfcheck(a) => with_ctx(a, |_| selfcheck::run()),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            // --help and --version are not errors
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("zhu-lab: error: {e}");
            if let Some(h) = e.hint() {
                eprintln!("zhu-lab: hint: {h}");
            }
            ExitCode::from(CliError::exit_code(&e))
        }
    }
}
