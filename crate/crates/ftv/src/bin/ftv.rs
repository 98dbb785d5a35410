use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use ftv::cli::{self, Command, Overrides};
use ftv::mirror::RenderFormat;
use ftv::FtvError;

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Cmd {
    Dualize,
    CiDualize,
    Lg,
    Subfamily,
    Enumerate,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Render {
    Text,
    Latex,
}

/// Framed duality for toric varieties. Reads a JSON problem file (or `-`
/// for stdin) and writes a JSON report.
#[derive(Debug, Parser)]
#[command(name = "ftv", version)]
struct Args {
    #[arg(value_enum)]
    command: Cmd,
    file: PathBuf,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    render: Option<Render>,
    /// Largest multiplier tried when searching for k₀ and k₁.
    #[arg(long)]
    k_cap: Option<u64>,
}

fn main() -> ExitCode {
    let args = Args::parse();
    match run(&args) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let body = cli::to_pretty(&cli::error_body(&e));
            let _ = io::stderr().write_all(body.as_bytes());
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn run(args: &Args) -> Result<(), FtvError> {
    let text = if args.file.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).map_err(|e| FtvError::Input(e.to_string()))?;
        s
    } else {
        fs::read_to_string(&args.file).map_err(|e| FtvError::Input(format!("{}: {e}", args.file.display())))?
    };
    let command = match args.command {
        Cmd::Dualize => Command::Dualize,
        Cmd::CiDualize => Command::CiDualize,
        Cmd::Lg => Command::Lg,
        Cmd::Subfamily => Command::Subfamily,
        Cmd::Enumerate => Command::Enumerate,
    };
    let overrides = Overrides {
        render: args.render.map(|r| match r {
            Render::Text => RenderFormat::Text,
            Render::Latex => RenderFormat::Latex,
        }),
        k_cap: args.k_cap,
    };
    let report = cli::to_pretty(&cli::run(command, &text, &overrides)?);
    match &args.out {
        Some(path) => fs::write(path, report).map_err(|e| FtvError::Input(format!("{}: {e}", path.display()))),
        None => io::stdout().write_all(report.as_bytes()).map_err(|e| FtvError::Input(e.to_string())),
    }
}
