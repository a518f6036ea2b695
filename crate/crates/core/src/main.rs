use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use bicombing_lab::figures::{export_figure, Figure};
use bicombing_lab::suite::{run_suite, SuiteName, SuiteSpec};
use bicombing_lab::verify::SampleConfig;
use bicombing_lab::Delta;

#[derive(Parser)]
#[command(
    name = "bicombing-lab",
    version,
    about = "Build and check geodesic bicombings"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a verification suite and write its reports.
    Run {
        #[arg(long)]
        suite: SuiteName,
        #[arg(long, default_value_t = Delta::MAX)]
        delta: f64,
        #[arg(long, default_value_t = SampleConfig::default().seed)]
        seed: u64,
        #[arg(long, default_value_t = SampleConfig::default().tuples)]
        tuples: usize,
        #[arg(long, default_value_t = SampleConfig::default().tol)]
        tol: f64,
        #[arg(long, default_value = "reports")]
        out: PathBuf,
    },
    /// Export the polylines of a figure as CSV.
    Figure {
        #[arg(long)]
        name: Figure,
        #[arg(long, default_value_t = Delta::MAX)]
        delta: f64,
        #[arg(long)]
        out: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Run {
            suite,
            delta,
            seed,
            tuples,
            tol,
            out,
        } => {
            let spec = SuiteSpec {
                name: suite,
                delta,
                seed,
                tuples,
                tol,
                out_dir: out,
            };
            match run_suite(&spec) {
                Ok(summary) => {
                    print!("{summary}");
                    ExitCode::from(summary.exit_code() as u8)
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    ExitCode::from(2)
                }
            }
        }
        Command::Figure { name, delta, out } => match export_figure(name, delta, &out) {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(2)
            }
        },
    }
}
