//! Scenario front end: parse a config, run or validate it, emit CSV/JSON.

use clap::{Parser, Subcommand};
use phaselab::scenario::{self, ScenarioConfig, SCENARIOS};
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

/// Print without panicking when the consumer closes the pipe early.
fn emit(text: &str) {
    let _ = std::io::stdout().write_all(text.as_bytes());
}

#[derive(Parser)]
#[command(name = "phaselab", about = "Phase-space concentration experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the experiment described by a JSON config file.
    Run {
        config: PathBuf,
        /// Override the config's seed.
        #[arg(long)]
        seed: Option<u64>,
        /// Output directory (default: config's `output`, then $PHASELAB_OUT,
        /// then ./phaselab-out).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Worker threads for independent sweep points.
        #[arg(long)]
        threads: Option<usize>,
    },
    /// Check a config file against the schema without running anything.
    Validate { config: PathBuf },
    /// List the available scenarios.
    ListScenarios,
}

fn main() -> ExitCode {
    match dispatch() {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn load_config(path: &PathBuf) -> Result<ScenarioConfig, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    serde_json::from_str(&text).map_err(|e| format!("cannot parse {}: {e}", path.display()))
}

fn dispatch() -> Result<ExitCode, String> {
    let cli = Cli::parse();
    match cli.command {
        Command::ListScenarios => {
            let mut out = String::new();
            for (name, description) in SCENARIOS {
                out.push_str(&format!("{name:20} {description}\n"));
            }
            emit(&out);
            Ok(ExitCode::SUCCESS)
        }
        Command::Validate { config } => {
            let cfg = load_config(&config)?;
            let violations = cfg.validate();
            if violations.is_empty() {
                println!("ok: {}", config.display());
                Ok(ExitCode::SUCCESS)
            } else {
                for v in &violations {
                    println!("violation: {v}");
                }
                Ok(ExitCode::from(2))
            }
        }
        Command::Run {
            config,
            seed,
            out,
            threads,
        } => {
            let mut cfg = load_config(&config)?;
            if let Some(seed) = seed {
                cfg.seed = Some(seed);
            }
            if let Some(threads) = threads {
                cfg.threads = Some(threads);
            }
            let violations = cfg.validate();
            if !violations.is_empty() {
                for v in &violations {
                    eprintln!("violation: {v}");
                }
                return Ok(ExitCode::from(2));
            }
            let out_dir = out
                .or_else(|| cfg.output.clone())
                .unwrap_or_else(scenario::default_output_dir);
            // Scenario-side artifacts (ascent reports) land in the same place.
            cfg.output = Some(out_dir.clone());
            let result = scenario::run(&cfg).map_err(|e| e.to_string())?;
            let (csv_path, json_path) =
                result.write_outputs(&out_dir).map_err(|e| e.to_string())?;
            let mut out = String::new();
            for row in &result.rows {
                out.push_str(&format!(
                    "param={} measured={} predicted={} defect={:.3e}\n",
                    row.param, row.measured, row.predicted, row.defect
                ));
            }
            out.push_str(&format!(
                "wrote {} and {}\n",
                csv_path.display(),
                json_path.display()
            ));
            emit(&out);
            if result.pass {
                emit(&format!(
                    "PASS {} ({:.2}s)\n",
                    result.scenario, result.wall_seconds
                ));
                Ok(ExitCode::SUCCESS)
            } else {
                for failure in &result.failures {
                    eprintln!("FAIL {}: {failure}", result.scenario);
                }
                Ok(ExitCode::from(1))
            }
        }
    }
}
