use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use fracspec_verify::acceptance::{self, VerifyOptions};
use fracspec::{run, CliError, Config, RunOptions};

/// Fractal geometry, Fourier and translation-span experiments.
#[derive(Debug, Parser)]
#[command(name = "fracspec", version)]
struct Args {
    /// construct | dim | minkowski | fourier | mollify | tauberian | verify
    command: String,
    /// Key-value config file (experiments only).
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, default_value = "out")]
    out: PathBuf,
    /// Worker threads.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Criterion group for `verify`: all, covering-inequalities, box-dimension,
    /// minkowski, fourier, mollifier, span, verdict, density, or a number.
    #[arg(long, default_value = "all")]
    suite: String,
    /// Normalise the Minkowski ratios with this exponent instead (fault injection).
    #[arg(long)]
    inject_beta: Option<f64>,
}

fn fail(err: CliError) -> ExitCode {
    let body = serde_json::json!({ "error": err.to_string(), "exit_code": err.exit_code() });
    eprintln!("{body}");
    ExitCode::from(err.exit_code() as u8)
}

fn main() -> ExitCode {
    let args = Args::parse();
    if args.command == "verify" {
        let opts = VerifyOptions {
            inject_beta: args.inject_beta,
        };
        let ids = match acceptance::select(&args.suite) {
            Ok(ids) => ids,
            Err(e) => return fail(CliError::Config(e)),
        };
        let mut results = Vec::new();
        for id in ids {
            if let Some(r) = acceptance::run_criterion(id, &opts) {
                eprintln!("{}", acceptance::status_line(&r));
                results.push(r);
            }
        }
        let failures: Vec<u32> = results.iter().filter(|r| !r.passed).map(|r| r.id).collect();
        let summary = acceptance::Summary {
            suite: args.suite,
            passed: results.len() - failures.len(),
            failed: failures.len(),
            failures,
            results,
        };
        println!("{}", serde_json::to_string_pretty(&summary).expect("summary serialises"));
        return if summary.all_passed() { ExitCode::SUCCESS } else { ExitCode::from(1) };
    }
    let config = match &args.config {
        Some(path) => match Config::load(path) {
            Ok(c) => c,
            Err(e) => return fail(e),
        },
        None => Config::default(),
    };
    let opts = RunOptions {
        seed: args.seed,
        out: args.out,
        jobs: args.jobs,
    };
    match run(&args.command, &config, &opts) {
        Ok(record) => {
            println!("{}", record.to_json());
            if record.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => fail(e),
    }
}
