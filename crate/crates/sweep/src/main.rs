use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use maxent_core::models::ModelKind;
use maxent_sweep::output::format_number;
use maxent_sweep::{parse_config, run_sweep, write_csv, SweepError};

#[derive(Parser)]
#[command(name = "maxent", version, about = "Maximum-entropy spin-chain sweeps")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sweep a control parameter and write sweep.csv and singularities.txt.
    Sweep {
        #[arg(long)]
        config: PathBuf,
        /// Overrides `output_dir` from the config.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Overrides `threads` from the config.
        #[arg(long)]
        threads: Option<usize>,
    },
    /// Print a model's observables and control parameter.
    Info {
        #[arg(long)]
        model: String,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            // Usage errors are config errors; --help and --version are not.
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn run(command: Command) -> Result<(), SweepError> {
    match command {
        Command::Info { model } => {
            let kind: ModelKind = model.parse().map_err(|e| SweepError::Config(format!("{e}")))?;
            println!("{}", kind.documentation());
            Ok(())
        }
        Command::Sweep { config, out, threads } => {
            let mut cfg = parse_config(&config)?;
            if let Some(dir) = out {
                cfg.output_dir = dir;
            }
            if let Some(k) = threads {
                if k == 0 {
                    return Err(SweepError::Config("invalid `--threads`: must be at least 1".into()));
                }
                cfg.threads = k;
            }
            let result = run_sweep(&cfg)?;
            let (csv, report) = write_csv(&result.labels, &result.records, &result.report, &cfg.output_dir)?;
            println!("wrote {} ({} points)", csv.display(), result.records.len());
            println!("wrote {}", report.display());
            let r = &result.report;
            for (name, m) in [("|d2F|", r.d2_free_energy), ("|dC|", r.d_concurrence), ("|dN|", r.d_negativity)] {
                println!("argmax {name:6} at {} = {}", format_number(m.control_value), format_number(m.value));
            }
            Ok(())
        }
    }
}
