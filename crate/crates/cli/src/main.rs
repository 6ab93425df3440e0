use std::io::{self, IsTerminal, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use endoring::verify::DEFAULT_BUDGET;
use endoring::{ring_params, run_census, run_verify, CliError, Runner, EXIT_OK, EXIT_PARAMS};

/// Exact arithmetic in End(Z_p x Z_{p^m}).
#[derive(Parser, Debug)]
#[command(name = "endoring", version)]
struct Cli {
    /// Prime p.
    #[arg(long, global = true)]
    p: Option<u64>,
    /// Exponent m >= 2.
    #[arg(long, global = true)]
    m: Option<u32>,
    /// Emit one JSON object per result line.
    #[arg(long, global = true)]
    json: bool,
    /// Script to run; reads statements from stdin when omitted.
    script: Option<PathBuf>,
    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate a script, or stdin interactively.
    Eval { script: Option<PathBuf> },
    /// Cross-check every operation against the brute-force oracle.
    Verify {
        /// Largest ring size to enumerate.
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Print ring size, unit count and unit density.
    Census,
}

fn eval(cli: &Cli, script: Option<&PathBuf>) -> Result<i32, CliError> {
    let params = ring_params(cli.p, cli.m)?;
    let mut runner = Runner::new(params, cli.json);
    let stdout = io::stdout();
    let stderr = io::stderr();
    match script {
        Some(path) => {
            let source = std::fs::read_to_string(path)?;
            Ok(runner.script(&source, &mut stdout.lock(), &mut stderr.lock()))
        }
        None => {
            let stdin = io::stdin();
            let prompt = stdin.is_terminal();
            Ok(runner.repl(&mut stdin.lock(), &mut stdout.lock(), &mut stderr.lock(), prompt))
        }
    }
}

fn run(cli: &Cli) -> Result<i32, CliError> {
    if cli.script.is_some() && cli.command.is_some() {
        return Err(CliError::Params(
            "a script path cannot be combined with a subcommand; use `eval <script>`".into(),
        ));
    }
    match &cli.command {
        None => eval(cli, cli.script.as_ref()),
        Some(Command::Eval { script }) => eval(cli, script.as_ref()),
        Some(Command::Verify { budget }) => {
            let params = ring_params(cli.p, cli.m)?;
            run_verify(params, *budget, cli.json, &mut io::stdout().lock())?;
            Ok(EXIT_OK)
        }
        Some(Command::Census) => {
            let params = ring_params(cli.p, cli.m)?;
            run_census(params, cli.json, &mut io::stdout().lock())?;
            Ok(EXIT_OK)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_PARAMS as u8 } else { 0 });
        }
    };
    let code = run(&cli).unwrap_or_else(|e| {
        eprintln!("{e}");
        e.exit_code()
    });
    let _ = io::stdout().flush();
    ExitCode::from(code as u8)
}
