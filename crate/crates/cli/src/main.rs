use std::path::PathBuf;
use std::process::ExitCode;

use chimukai_core::scene::{explain, run_corpus, run_scene, RunOptions, Scene};
use clap::{Parser, Subcommand};

/// Exact intersection multiplicities, Mukai pairings and friends, driven by
/// JSON scene files.
#[derive(Parser)]
#[command(name = "chimukai", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Emit machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Tolerance for Gamma-class scenes.
    #[arg(long, global = true, value_name = "FLOAT")]
    tol: Option<f64>,
    /// Cap on the length of free resolutions.
    #[arg(long, global = true, value_name = "N")]
    max_resolution_length: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Run one scene file.
    Run { scene: PathBuf },
    /// Run every scene in a directory and compare against `expected/`.
    Corpus { dir: PathBuf },
    /// Print the formulas a scene evaluates.
    Explain { scene: PathBuf },
}

const PASS: u8 = 0;
const CHECK_FAILED: u8 = 1;
const INPUT_ERROR: u8 = 2;

fn input_error(e: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {e}");
    ExitCode::from(INPUT_ERROR)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let opts = RunOptions {
        tol: cli.tol,
        max_resolution_length: cli.max_resolution_length,
    };
    match &cli.command {
        Command::Run { scene } => {
            let scene = match Scene::from_file(scene) {
                Ok(s) => s,
                Err(e) => return input_error(e),
            };
            let report = match run_scene(&scene, &opts) {
                Ok(r) => r,
                Err(e) => return input_error(e),
            };
            if cli.json {
                println!("{}", report.to_json());
            } else {
                print!("{}", report.text());
            }
            ExitCode::from(if report.passed { PASS } else { CHECK_FAILED })
        }
        Command::Corpus { dir } => {
            let summary = match run_corpus(dir, &opts) {
                Ok(s) => s,
                Err(e) => return input_error(e),
            };
            if cli.json {
                println!("{}", summary.to_json());
            } else {
                print!("{}", summary.table());
            }
            ExitCode::from(summary.exit_code() as u8)
        }
        Command::Explain { scene } => {
            let scene = match Scene::from_file(scene) {
                Ok(s) => s,
                Err(e) => return input_error(e),
            };
            let text = explain(&scene);
            if cli.json {
                let v = serde_json::json!({ "id": scene.id, "kind": scene.kind(), "explanation": text });
                println!("{}", serde_json::to_string_pretty(&v).expect("json"));
            } else {
                print!("{text}");
            }
            ExitCode::from(PASS)
        }
    }
}
