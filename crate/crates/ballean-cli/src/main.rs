use std::path::PathBuf;
use std::process::ExitCode;

use ballean_cli::report::Format;
use ballean_cli::RunOptions;
use clap::Parser;

/// Runs windowed coarse-geometry scenario files.
#[derive(Parser)]
#[command(name = "ballean-cli", version, about)]
struct Args {
    /// Path to the scenario file.
    #[arg(long)]
    scenario: PathBuf,

    /// Write the report to this file instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,

    /// Report format.
    #[arg(long, value_enum, default_value_t = FormatArg::Json)]
    format: FormatArg,

    /// Reserved; every run is deterministic.
    #[arg(long)]
    seed: Option<u64>,

    /// Step budget for search tasks; exhausting it is inconclusive.
    #[arg(long)]
    max_steps: Option<u64>,
}

#[derive(Clone, Copy, clap::ValueEnum)]
enum FormatArg {
    Json,
    Text,
}

fn main() -> ExitCode {
    let args = Args::parse();
    let _ = args.seed;
    let text = match std::fs::read_to_string(&args.scenario) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", args.scenario.display());
            return ExitCode::from(3);
        }
    };
    let opts = RunOptions {
        format: match args.format {
            FormatArg::Json => Format::Json,
            FormatArg::Text => Format::Text,
        },
        max_steps: args.max_steps,
    };
    match ballean_cli::run_str(&text, &opts) {
        Ok((code, body)) => {
            if let Some(path) = &args.output {
                if let Err(e) = std::fs::write(path, &body) {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    return ExitCode::from(3);
                }
            } else {
                print!("{body}");
            }
            ExitCode::from(code as u8)
        }
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(3)
        }
    }
}
