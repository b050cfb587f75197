use std::fs::{self, File};
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use cliffpar_cli::report::{self, Report};
use cliffpar_cli::{query, run_axiom_suite, run_example, Config, ScenarioId};

#[derive(Parser)]
#[command(
    name = "cliffpar",
    version,
    about = "Exact checks for Clifford-like parallelisms"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Reproduce one worked example: root3, c2-sep, c2-sep-old, c2-insep, c2-insep-old.
    VerifyExample {
        id: String,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Run the seeded property suite on a configuration.
    Axioms {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Evaluate one expression, e.g. "norm i+(1+s)*j".
    Query {
        #[arg(long)]
        config: PathBuf,
        expr: String,
        #[arg(long)]
        json: Option<PathBuf>,
    },
}

/// Exit status for bad arguments, unreadable files and invalid configs.
const USAGE: u8 = 2;

fn usage_error(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(USAGE)
}

fn load_config(path: &Path) -> Result<Config, ExitCode> {
    let text =
        fs::read_to_string(path).map_err(|e| usage_error(format!("{}: {e}", path.display())))?;
    Config::parse(&text).map_err(|e| usage_error(format!("{}: {e}", path.display())))
}

fn emit(reports: &[Report], json: Option<&Path>) -> ExitCode {
    let stdout = io::stdout();
    let mut out = stdout.lock();
    if let Err(e) = report::write_human(&mut out, reports).and_then(|_| out.flush()) {
        return usage_error(e);
    }
    if let Some(path) = json {
        let written = File::create(path).and_then(|f| {
            let mut w = BufWriter::new(f);
            report::write_json_lines(&mut w, reports)?;
            w.flush()
        });
        if let Err(e) = written {
            return usage_error(format!("{}: {e}", path.display()));
        }
    }
    if report::all_pass(reports) {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::VerifyExample { id, json } => match id.parse::<ScenarioId>() {
            Ok(id) => emit(&run_example(id), json.as_deref()),
            Err(e) => usage_error(e),
        },
        Command::Axioms {
            config,
            samples,
            seed,
            json,
        } => match load_config(&config) {
            Ok(c) => {
                let reports =
                    run_axiom_suite(&c, samples.unwrap_or(c.samples), seed.unwrap_or(c.seed));
                emit(&reports, json.as_deref())
            }
            Err(code) => code,
        },
        Command::Query { config, expr, json } => match load_config(&config) {
            Ok(c) => {
                let start = Instant::now();
                match query(&c, &expr) {
                    Ok(result) => {
                        println!("{result}");
                        let mut r = Report::pass("query", Some(result));
                        r.ms = start.elapsed().as_millis() as u64;
                        if let Some(path) = json {
                            if let Err(e) = fs::write(&path, format!("{}\n", r.to_json())) {
                                return usage_error(format!("{}: {e}", path.display()));
                            }
                        }
                        ExitCode::SUCCESS
                    }
                    Err(e) => usage_error(e),
                }
            }
            Err(code) => code,
        },
    }
}
