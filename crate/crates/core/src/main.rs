use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use serde_json::{json, Value};

use gmcheck::io::parse_manifold;
use gmcheck::report::{run, system_to_json, ObstructionReport, RunOptions, Systems};

const EXIT_INCONCLUSIVE: u8 = 0;
const EXIT_INTERNAL: u8 = 1;
const EXIT_INVALID: u8 = 2;
const EXIT_OBSTRUCTED: u8 = 10;

#[derive(Parser)]
#[command(name = "gmcheck", version, about = "Corank obstructions for generalized graph manifolds")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a manifold description (or a directory of them) for obstructions.
    Check(CheckArgs),
}

#[derive(Args)]
struct CheckArgs {
    /// JSON manifold description.
    #[arg(required_unless_present = "batch", conflicts_with = "batch")]
    file: Option<PathBuf>,
    /// Emit the report as JSON.
    #[arg(long)]
    json: bool,
    /// Only build the boundary-torus isometry system.
    #[arg(long, conflicts_with = "ls2_only")]
    ls1_only: bool,
    /// Only build the fiber-intersection system.
    #[arg(long)]
    ls2_only: bool,
    /// Write the coefficient matrices with row provenance into this directory.
    #[arg(long, value_name = "DIR")]
    dump_systems: Option<PathBuf>,
    /// Check corank invariance under N random basis changes.
    #[arg(long, value_name = "N", default_value_t = 0)]
    self_test: usize,
    /// Seed for the self-test basis changes.
    #[arg(long, value_name = "S", default_value_t = 0)]
    seed: u64,
    /// Process every *.json file in a directory.
    #[arg(long, value_name = "DIR")]
    batch: Option<PathBuf>,
}

struct Outcome {
    exit: u8,
    text: String,
    json: Value,
}

fn failure(exit: u8, code: &str, message: String) -> Outcome {
    Outcome {
        exit,
        text: format!("error[{code}]: {message}\n"),
        json: json!({ "error": { "code": code, "message": message } }),
    }
}

fn dump(report: &ObstructionReport, dir: &Path, stem: &str) -> std::io::Result<()> {
    fs::create_dir_all(dir)?;
    for (name, system) in [("LS1", &report.ls1_system), ("LS2", &report.ls2_system)] {
        if let Some(ls) = system {
            let path = dir.join(format!("{stem}.{}.json", name.to_lowercase()));
            let body = serde_json::to_string_pretty(&system_to_json(name, ls))?;
            fs::write(path, body + "\n")?;
        }
    }
    Ok(())
}

fn check_file(path: &Path, args: &CheckArgs) -> Outcome {
    let text = match fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => return failure(EXIT_INVALID, "IoError", format!("{}: {e}", path.display())),
    };
    let spec = match parse_manifold(&text) {
        Ok(s) => s,
        Err(e) => return failure(EXIT_INVALID, e.code(), e.to_string()),
    };
    let systems = match (args.ls1_only, args.ls2_only) {
        (true, _) => Systems::Ls1Only,
        (_, true) => Systems::Ls2Only,
        _ => Systems::Both,
    };
    let options =
        RunOptions { systems, self_test: args.self_test, seed: args.seed, keep_systems: args.dump_systems.is_some() };
    let report = match run(&spec, &options) {
        Ok(r) => r,
        Err(e @ gmcheck::report::RunError::Internal(_)) => return failure(EXIT_INTERNAL, e.code(), e.to_string()),
        Err(e) => return failure(EXIT_INVALID, e.code(), e.to_string()),
    };
    if let Some(dir) = &args.dump_systems {
        let stem = path.file_stem().map_or("system".into(), |s| s.to_string_lossy().into_owned());
        if let Err(e) = dump(&report, dir, &stem) {
            return failure(EXIT_INTERNAL, "IoError", format!("{}: {e}", dir.display()));
        }
    }
    let exit = if report.self_test.as_ref().is_some_and(|t| !t.passed()) {
        EXIT_INTERNAL
    } else if report.verdict.is_obstructed() {
        EXIT_OBSTRUCTED
    } else {
        EXIT_INCONCLUSIVE
    };
    Outcome { exit, text: report.render_text(), json: report.to_json() }
}

/// Worst outcome wins: internal error, then invalid input, then obstruction.
fn combine(codes: impl Iterator<Item = u8>) -> u8 {
    let rank = |c: u8| match c {
        EXIT_INTERNAL => 3,
        EXIT_INVALID => 2,
        EXIT_OBSTRUCTED => 1,
        _ => 0,
    };
    codes.max_by_key(|&c| rank(c)).unwrap_or(EXIT_INCONCLUSIVE)
}

fn check(args: &CheckArgs) -> u8 {
    if let Some(dir) = &args.batch {
        let entries = match fs::read_dir(dir) {
            Ok(e) => e,
            Err(e) => {
                eprintln!("error[IoError]: {}: {e}", dir.display());
                return EXIT_INVALID;
            }
        };
        let mut files: Vec<PathBuf> = entries
            .filter_map(Result::ok)
            .map(|e| e.path())
            .filter(|p| p.extension().is_some_and(|x| x == "json"))
            .collect();
        files.sort();
        let outcomes: Vec<Outcome> = files.par_iter().map(|f| check_file(f, args)).collect();
        if args.json {
            let items: Vec<Value> = files
                .iter()
                .zip(&outcomes)
                .map(|(f, o)| json!({ "file": f.display().to_string(), "exit": o.exit, "result": o.json }))
                .collect();
            println!("{}", serde_json::to_string_pretty(&Value::Array(items)).expect("serializable"));
        } else {
            for (f, o) in files.iter().zip(&outcomes) {
                println!("== {}", f.display());
                print!("{}", o.text);
                println!();
            }
        }
        return combine(outcomes.iter().map(|o| o.exit));
    }

    let path = args.file.as_ref().expect("clap enforces file or --batch");
    let outcome = check_file(path, args);
    if args.json {
        println!("{}", serde_json::to_string_pretty(&outcome.json).expect("serializable"));
    } else if outcome.exit == EXIT_INVALID || outcome.json.get("error").is_some() {
        eprint!("{}", outcome.text);
    } else {
        print!("{}", outcome.text);
    }
    outcome.exit
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match &cli.command {
        Command::Check(args) => check(args),
    };
    ExitCode::from(code)
}
