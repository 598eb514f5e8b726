use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};

use singular_periodic::certify::ExistenceCase;
use singular_periodic::cli::{exit_code, parse_annulus, run, Command, LambdaRange, RunConfig};
use singular_periodic::Result;

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Cmd {
    /// Print sigma_i, sigma, Gamma, chi and the kernel bounds
    Constants,
    /// Check the hypotheses and write a numerical certificate
    Verify,
    /// Find periodic solutions and write CSV reports
    Solve,
    /// Count solutions over a range of lambda
    Sweep,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Case {
    A,
    B,
    C,
}

/// Positive periodic solutions of singular first-order systems.
#[derive(Debug, Parser)]
#[command(name = "singper", version)]
struct Cli {
    #[arg(value_enum)]
    command: Cmd,
    /// Problem file
    #[arg(long)]
    config: PathBuf,
    /// Grid size (power of two, >= 16)
    #[arg(long, default_value_t = 128)]
    grid: usize,
    /// Fixed-point tolerance
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
    /// Override lambda from the problem file
    #[arg(long)]
    lambda: Option<f64>,
    /// a:b:n[:log]
    #[arg(long = "lambda-range")]
    lambda_range: Option<String>,
    /// ra:rb
    #[arg(long)]
    annulus: Option<String>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output directory
    #[arg(long, default_value = ".")]
    out: PathBuf,
    /// Existence case to certify instead of the detected one
    #[arg(long = "case", value_enum)]
    case: Option<Case>,
    /// Include the forcing term e
    #[arg(long)]
    forcing: bool,
}

fn build(cli: Cli) -> Result<RunConfig> {
    let command = match cli.command {
        Cmd::Constants => Command::Constants,
        Cmd::Verify => Command::Verify,
        Cmd::Solve => Command::Solve,
        Cmd::Sweep => Command::Sweep,
    };
    let mut config = RunConfig::new(command, cli.config);
    config.grid = cli.grid;
    config.tol = cli.tol;
    config.lambda = cli.lambda;
    config.lambda_range = cli.lambda_range.as_deref().map(LambdaRange::parse).transpose()?;
    config.annulus = cli.annulus.as_deref().map(parse_annulus).transpose()?;
    config.seed = cli.seed;
    config.out = cli.out;
    config.case = cli.case.map(|c| match c {
        Case::A => ExistenceCase::A,
        Case::B => ExistenceCase::B,
        Case::C => ExistenceCase::C,
    });
    config.forcing = cli.forcing;
    Ok(config)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 4 } else { 0 });
        }
    };
    let result = build(cli).and_then(|config| run(&config, &mut std::io::stdout().lock()));
    if let Err(e) = &result {
        eprintln!("error: {e}");
    }
    ExitCode::from(exit_code(&result) as u8)
}
