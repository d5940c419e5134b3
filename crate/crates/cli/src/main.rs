use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use surfgrp::fingroup::Limits;
use surfgrp_cli::commands::{run, Command, Ctx};

#[derive(Debug, Parser)]
#[command(name = "surfgrp", version, about = "Finite-quotient workbench for surface groups")]
struct Cli {
    /// Seed for sampled experiments.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Largest group (number of elements) any step may build.
    #[arg(long, global = true, env = "SURFGRP_CAP")]
    cap: Option<usize>,
    /// Emit JSON (the default).
    #[arg(long, global = true, conflicts_with = "csv")]
    json: bool,
    /// Emit the report's table as CSV.
    #[arg(long, global = true)]
    csv: bool,
    /// Worker threads.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Include wall-clock timings (makes output nondeterministic).
    #[arg(long, global = true)]
    timings: bool,
    #[command(subcommand)]
    cmd: Command,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(j) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(j.max(1)).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let mut limits = Limits::default();
    if let Some(cap) = cli.cap {
        limits = limits.with_elements(cap);
    }
    let ctx = Ctx { limits, seed: cli.seed, timings: cli.timings };
    match run(&cli.cmd, &ctx) {
        Ok(rep) => {
            let text = if cli.csv { rep.to_csv() } else { rep.to_json() + "\n" };
            // a closed pipe downstream is not our failure
            let _ = std::io::stdout().lock().write_all(text.as_bytes());
            ExitCode::from(rep.verdict.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
