use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::Context;
use clap::Parser;

use graphprod_cli::{exit_code, run_text, Overrides, Registry, EXIT_CHECK_FAILED};

#[derive(Debug, Parser)]
#[command(name = "graphprod", version, about = "Graph products of groups and graded algebras")]
struct Args {
    /// Command to run; falls back to the job's "command" field. `list` prints the commands.
    command: Option<String>,
    /// Variant for tor-closed/tor-oracle (aprime, ak) or is-free (algebra, group).
    target: Option<String>,
    /// Job document (JSON); `-` reads standard input.
    #[arg(long)]
    spec: Option<PathBuf>,
    /// gf2, gf3, gf<p> or q.
    #[arg(long)]
    field: Option<String>,
    /// Highest internal degree (word length for groups)
    #[arg(long)]
    nmax: Option<usize>,
    /// Highest homological degree for Tor tables
    #[arg(long)]
    smax: Option<usize>,
    /// Emit JSON instead of the text report.
    #[arg(long)]
    machine: bool,
}

fn read_spec(path: &PathBuf) -> anyhow::Result<String> {
    if path.as_os_str() == "-" {
        return std::io::read_to_string(std::io::stdin()).context("reading standard input");
    }
    std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn main() -> ExitCode {
    let args = Args::parse();
    let registry = Registry::default();
    if args.command.as_deref() == Some("list") {
        for c in registry.iter() {
            println!("{:<16} {}", c.name(), c.about());
        }
        return ExitCode::SUCCESS;
    }
    let start = Instant::now();
    let result = args
        .spec
        .as_ref()
        .context("--spec is required")
        .and_then(read_spec)
        .and_then(|text| {
            let o = Overrides {
                command: args.command.clone(),
                target: args.target.clone(),
                field: args.field.clone(),
                n_max: args.nmax,
                s_max: args.smax,
            };
            run_text(&text, o, &registry)
        });
    match result {
        Ok(report) => {
            if args.machine {
                println!("{}", report.machine());
            } else {
                print!("{}", report.human());
            }
            eprintln!("graphprod: {} finished in {:.1?}", report.command, start.elapsed());
            if report.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_CHECK_FAILED as u8)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e) as u8)
        }
    }
}
