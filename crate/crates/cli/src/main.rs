use std::io;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use tightcut_cli::commands::{self, CheckKind, DecomposeFormat};
use tightcut_cli::input::{parse_matching, parse_shore, read_graph};
use tightcut_cli::Result;

#[derive(Parser)]
#[command(name = "tightcut", version, about = "Canonical decompositions and fat matchings across cuts of bricks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the canonical decomposition of a factorizable graph.
    Decompose {
        file: PathBuf,
        #[arg(long, conflicts_with = "dot")]
        json: bool,
        #[arg(long)]
        dot: bool,
    },
    /// Find a perfect matching of a brick with two or more edges across a cut.
    Witness {
        file: PathBuf,
        /// Comma-separated shore vertices, e.g. 1,2,3.
        #[arg(long)]
        shore: String,
        /// Starting perfect matching, e.g. 1-2,3-6,4-5.
        #[arg(long)]
        matching: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Run a check against a graph file.
    Check {
        #[arg(value_enum)]
        kind: Kind,
        file: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Brick,
    TightCuts,
    VerifyDecomp,
}

fn run(cli: Cli) -> Result<()> {
    let mut out = io::stdout().lock();
    match cli.command {
        Command::Decompose { file, dot, .. } => {
            let g = read_graph(&file)?;
            let format = if dot { DecomposeFormat::Dot } else { DecomposeFormat::Json };
            commands::decompose(&g, format, &mut out)
        }
        Command::Witness { file, shore, matching, json } => {
            let g = read_graph(&file)?;
            let shore = parse_shore(&g, &shore)?;
            let m = matching.map(|s| parse_matching(&g, &s)).transpose()?;
            commands::witness(&g, &shore, m.as_ref(), json, &mut out)
        }
        Command::Check { kind, file } => {
            let g = read_graph(&file)?;
            let kind = match kind {
                Kind::Brick => CheckKind::Brick,
                Kind::TightCuts => CheckKind::TightCuts,
                Kind::VerifyDecomp => CheckKind::VerifyDecomp,
            };
            commands::check(&g, kind, commands::enum_bound()?, &mut out)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
