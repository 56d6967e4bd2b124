//! `gorkit`: command-line front end.

mod commands;
mod input;
mod output;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use gorkit_core::par;
use gorkit_core::Cap;
use serde_json::{json, Value};

use commands::{CliError, CliResult};

#[derive(Parser)]
#[command(name = "gorkit", version, about = "Exact computations with Gorenstein polytopes and nef-partitions")]
struct Cli {
    /// Enumeration cap on candidate lattice points.
    #[arg(long, global = true, default_value_t = Cap::default().0)]
    cap: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Dual Gorenstein polytope (the polar for reflexive input).
    Dual { file: PathBuf },
    /// Index and the interior point at distance 1/index from every facet.
    Gorenstein { file: PathBuf },
    /// h*-polynomial.
    Hstar { file: PathBuf },
    /// S̃-polynomial.
    Stilde { file: PathBuf },
    /// Stringy E-function, or its value at `--at u,v`.
    Est {
        file: PathBuf,
        #[arg(long)]
        at: Option<String>,
    },
    /// All E-function diagnostics.
    Check { file: PathBuf },
    /// Special simplices and Cayley structures.
    Special { file: PathBuf },
    /// Cayley polytope of the parts of a nef file.
    Cayley { file: PathBuf },
    /// Dual nef-partition.
    NefDual { file: PathBuf },
    /// Collect parts into blocks, e.g. `--blocks 1,2;3`.
    NefCollect {
        file: PathBuf,
        #[arg(long)]
        blocks: String,
    },
    /// Project along the span of the parts in J, e.g. `--j 2`.
    NefProject {
        file: PathBuf,
        #[arg(long)]
        j: String,
    },
    /// Irreducible decomposition and length bound.
    NefDecompose { file: PathBuf },
    /// Cancellation test for the two parts P, Q of a nef file.
    NefCancel { file: PathBuf },
    /// Weighted simplex for weights dividing `w`, e.g. `5 1,1,1,1,1`.
    Weighted { w: String, weights: String },
    /// Run a polytope command over many files; output keeps the input order.
    Batch {
        #[arg(value_enum)]
        command: BatchCommand,
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum BatchCommand {
    Dual,
    Gorenstein,
    Hstar,
    Stilde,
    Est,
    Check,
    Special,
}

fn polytope_command(cmd: BatchCommand, file: &Path, cap: Cap) -> CliResult {
    let p = commands::load_polytope(file)?;
    match cmd {
        BatchCommand::Dual => commands::dual(&p).map(|(v, _)| v),
        BatchCommand::Gorenstein => commands::gorenstein(&p),
        BatchCommand::Hstar => commands::hstar(&p, cap),
        BatchCommand::Stilde => commands::stilde(&p, cap),
        BatchCommand::Est => commands::est(&p, None, cap),
        BatchCommand::Check => commands::check(&p, cap),
        BatchCommand::Special => commands::special(&p, cap),
    }
}

/// Report and the exit code of the first failure, in input order.
fn batch(cmd: BatchCommand, files: &[PathBuf], cap: Cap) -> (Value, i32) {
    let results = par::map(files, |f| polytope_command(cmd, f, cap));
    let mut code = 0;
    let items = files
        .iter()
        .zip(results)
        .map(|(f, r)| match r {
            Ok(v) => json!({ "file": f.display().to_string(), "result": v }),
            Err(e) => {
                if code == 0 {
                    code = e.exit_code();
                }
                json!({ "file": f.display().to_string(), "error": e.to_string() })
            }
        })
        .collect();
    (Value::Array(items), code)
}

/// What to print and the exit code.
struct Outcome {
    json: Value,
    /// Replaces the generic text rendering.
    text: Option<String>,
    code: i32,
}

impl From<Value> for Outcome {
    fn from(json: Value) -> Self {
        Self { json, text: None, code: 0 }
    }
}

impl From<(Value, String)> for Outcome {
    fn from((json, text): (Value, String)) -> Self {
        Self { json, text: Some(text), code: 0 }
    }
}

fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let cap = Cap(cli.cap);
    let single = |cmd, file: &Path| polytope_command(cmd, file, cap).map(Outcome::from);
    match &cli.command {
        Command::Dual { file } => Ok(commands::dual(&commands::load_polytope(file)?)?.into()),
        Command::Gorenstein { file } => single(BatchCommand::Gorenstein, file),
        Command::Hstar { file } => single(BatchCommand::Hstar, file),
        Command::Stilde { file } => single(BatchCommand::Stilde, file),
        Command::Check { file } => single(BatchCommand::Check, file),
        Command::Special { file } => single(BatchCommand::Special, file),
        Command::Est { file, at } => {
            let p = commands::load_polytope(file)?;
            Ok(commands::est(&p, at.as_deref(), cap)?.into())
        }
        Command::Cayley { file } => Ok(commands::cayley(&commands::load_nef(file)?)?.into()),
        Command::NefDual { file } => Ok(commands::nef_dual(&commands::load_nef(file)?, cap)?.into()),
        Command::NefCollect { file, blocks } => {
            Ok(commands::nef_collect(&commands::load_nef(file)?, blocks, cap)?.into())
        }
        Command::NefProject { file, j } => Ok(commands::nef_project(&commands::load_nef(file)?, j, cap)?.into()),
        Command::NefDecompose { file } => Ok(commands::nef_decompose(&commands::load_nef(file)?, cap)?.into()),
        Command::NefCancel { file } => Ok(commands::nef_cancel(&commands::load_nef(file)?, cap)?.into()),
        Command::Weighted { w, weights } => Ok(commands::weighted(w, weights, cap)?.into()),
        Command::Batch { command, files } => {
            let (json, code) = batch(*command, files, cap);
            Ok(Outcome { json, text: None, code })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let text = matches!(cli.format, Format::Text);
    match run(&cli) {
        Ok(o) => {
            match (text, o.text) {
                (true, Some(t)) => print!("{t}"),
                _ => print!("{}", commands::render(&o.json, text)),
            }
            ExitCode::from(o.code as u8)
        }
        Err(e) => {
            eprintln!("gorkit: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
