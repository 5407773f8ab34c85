use std::path::PathBuf;
use std::process::ExitCode;

use bvdouble::verify::{run_suite, Config};
use bvdouble::AlgebraError;
use clap::{Parser, Subcommand};

#[derive(Parser)]
#[command(name = "bvdouble", version, about = "Exact identity checks for the BV double of the standard Courant algebroid")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one identity suite and write a JSON report.
    Verify {
        /// courant, bvcomplex, bvlz, cinf, cyclic, linf, deform, ym, exterior, cbracket or doublecopy
        #[arg(long)]
        suite: String,
        /// JSON configuration file
        #[arg(long)]
        config: PathBuf,
        /// Overrides the configured seed
        #[arg(long)]
        seed: Option<u64>,
        /// Overrides the configured sample count
        #[arg(long)]
        samples: Option<u64>,
        /// Report path; stdout when absent
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

const EXIT_FAIL: u8 = 1;
const EXIT_CONFIG: u8 = 2;

fn config_error(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("bvdouble: config error: {msg}");
    ExitCode::from(EXIT_CONFIG)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(EXIT_CONFIG) } else { ExitCode::SUCCESS };
        }
    };
    let Command::Verify { suite, config, seed, samples, out } = cli.command;
    let text = match std::fs::read_to_string(&config) {
        Ok(t) => t,
        Err(e) => return config_error(format!("{}: {e}", config.display())),
    };
    let mut cfg = match Config::from_json_str(&text) {
        Ok(c) => c,
        Err(e) => return config_error(e),
    };
    if let Some(s) = seed {
        cfg.seed = s;
    }
    if let Some(n) = samples {
        cfg.samples = n;
    }
    let report = match run_suite(&suite, &cfg) {
        Ok(r) => r,
        Err(AlgebraError::UnknownSuite(name)) => return config_error(format!("unknown suite {name:?}")),
        Err(e) => return config_error(e),
    };
    let body = report.to_canonical_string();
    match &out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &body) {
                eprintln!("bvdouble: cannot write {}: {e}", path.display());
                return ExitCode::from(EXIT_CONFIG);
            }
        }
        None => print!("{body}"),
    }
    for id in report.identities.iter().filter(|r| !r.passed()) {
        eprintln!("FAIL {} ({} of {} samples)", id.id, id.failures, id.samples);
    }
    if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_FAIL)
    }
}
