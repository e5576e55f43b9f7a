use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use ratemat::cli::{self, CliError, Command, Format, Mode, RunConfig};

#[derive(Parser)]
#[command(name = "ratemat", version, about = "CTMC rate matrix estimation from a sample path")]
struct Args {
    #[command(subcommand)]
    command: Cmd,
    /// Input file: a path file, or a model file for `simulate`
    #[arg(long, global = true)]
    input: Option<PathBuf>,
    /// Write the report here instead of stdout
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Imprecision parameter (pseudo-counts)
    #[arg(long, global = true, default_value_t = 1.0)]
    s: f64,
    /// Comma-separated grid levels, e.g. 8,16,32
    #[arg(long, global = true)]
    m: Option<String>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[arg(long, global = true, value_enum, default_value_t = ModeArg::Ml)]
    mode: ModeArg,
    /// Gamble as a JSON array in state order, e.g. [0,1,2]
    #[arg(long, global = true)]
    h: Option<String>,
    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Json)]
    format: FormatArg,
    /// Relative tolerance for the convergence check
    #[arg(long, global = true, default_value_t = 1e-3)]
    tol: f64,
    /// Gamma prior file {"alpha": [[..]], "beta": [..]} for --mode bayes
    #[arg(long, global = true)]
    prior: Option<PathBuf>,
}

#[derive(Subcommand, Clone, Copy)]
enum Cmd {
    /// Simulate a path from a model file
    Simulate,
    /// Sufficient statistics of a path
    Stats,
    /// ML, Bayes or imprecise estimate
    Estimate,
    /// Discrete-to-continuous convergence report
    Convergence,
    /// Lower and upper rate operators applied to a gamble
    LowerOp,
}

#[derive(ValueEnum, Clone, Copy)]
enum ModeArg {
    Ml,
    Bayes,
    Imprecise,
}

#[derive(ValueEnum, Clone, Copy)]
enum FormatArg {
    Json,
    Csv,
}

fn execute(args: Args) -> Result<i32, CliError> {
    cli::configure_threads()?;
    let command = match args.command {
        Cmd::Simulate => Command::Simulate,
        Cmd::Stats => Command::Stats,
        Cmd::Estimate => Command::Estimate,
        Cmd::Convergence => Command::Convergence,
        Cmd::LowerOp => Command::LowerOp,
    };
    let input = args.input.ok_or_else(|| CliError { code: cli::EXIT_INPUT, message: "--input is required".into() })?;
    let mut cfg = RunConfig::new(command, input);
    cfg.s = args.s;
    cfg.m_values = args.m.as_deref().map(cli::parse_m_values).transpose()?;
    cfg.seed = args.seed;
    cfg.mode = match args.mode {
        ModeArg::Ml => Mode::Ml,
        ModeArg::Bayes => Mode::Bayes,
        ModeArg::Imprecise => Mode::Imprecise,
    };
    cfg.h = args.h;
    cfg.format = match args.format {
        FormatArg::Json => Format::Json,
        FormatArg::Csv => Format::Csv,
    };
    cfg.tol = args.tol;
    cfg.prior = args.prior;

    let out = cli::run(&cfg)?;
    match &args.output {
        Some(p) => std::fs::write(p, &out.text)
            .map_err(|e| CliError { code: cli::EXIT_INPUT, message: format!("{}: {e}", p.display()) })?,
        None => print!("{}", out.text),
    }
    if let Some(msg) = out.message {
        eprintln!("{msg}");
    }
    Ok(out.code)
}

fn main() -> ExitCode {
    let code = match execute(Args::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {}", e.message);
            e.code
        }
    };
    ExitCode::from(code as u8)
}
