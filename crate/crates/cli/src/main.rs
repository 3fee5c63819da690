//! `minranklab` command-line front end.
//!
//! Every command prints JSON: a single document
//! `{"manifest": ..., "result": ...}`, or for streaming commands one JSON
//! line per result followed by a `{"manifest": ...}` line. The manifest's
//! `run` section holds argv, worker count and timestamps; everything else
//! depends only on the command and its parameters.
//!
//! Exit codes: 0 success, 1 bad parameters or input, 2 budget refusal,
//! 3 a verification found a violation.

mod args;
mod commands;

use std::process::ExitCode;
use std::time::Instant;

use clap::Parser;
use serde::Serialize;
use serde_json::{json, Value};

use args::*;
use commands::{CmdResult, Failure, Payload, EXIT_DOMAIN, EXIT_VIOLATION};

#[derive(Serialize)]
struct RunInfo {
    argv: Vec<String>,
    jobs: usize,
    started_at: String,
    finished_at: String,
    elapsed_ms: u128,
}

#[derive(Serialize)]
struct Manifest {
    command: &'static str,
    params: Value,
    seed: Option<u64>,
    version: &'static str,
    outputs: Vec<String>,
    run: RunInfo,
}

fn params<T: Serialize>(args: &T) -> Value {
    serde_json::to_value(args).expect("arguments serialize")
}

/// Command name, parameters, seed and the handler's result.
fn dispatch(command: &Command) -> (&'static str, Value, Option<u64>, CmdResult) {
    match command {
        Command::Minrank(MinrankCmd::Exact(a)) => ("minrank exact", params(a), None, commands::minrank_exact_cmd(a)),
        Command::Minrank(MinrankCmd::Bounds(a)) => ("minrank bounds", params(a), None, commands::minrank_bounds_cmd(a)),
        Command::Kneser(KneserCmd::Build(a)) => ("kneser build", params(a), None, commands::kneser_build(a)),
        Command::Kneser(KneserCmd::Theorem(a)) => ("kneser theorem", params(a), None, commands::kneser_theorem(a)),
        Command::Lll(LllCmd::Analyze(a)) => ("lll analyze", params(a), None, commands::lll_analyze(a)),
        Command::Verify(VerifyCmd::Lemma(a)) => ("verify lemma", params(a), None, commands::verify_lemma(a)),
        Command::Experiment(ExperimentCmd::GEstimate(a)) => (
            "experiment g-estimate",
            params(a),
            Some(a.seed),
            commands::g_estimate(a),
        ),
        Command::Experiment(ExperimentCmd::GExhaustive(a)) => {
            ("experiment g-exhaustive", params(a), None, commands::g_exhaustive(a))
        }
        Command::Convert(a) => ("convert", params(a), None, commands::convert(a)),
    }
}

fn fail(f: &Failure) -> ExitCode {
    eprintln!("error: {}", f.message);
    ExitCode::from(f.code)
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_DOMAIN)
            } else {
                ExitCode::SUCCESS
            };
        }
    };

    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(j) = cli.jobs {
        if j == 0 {
            return fail(&Failure::domain("--jobs must be positive"));
        }
        pool = pool.num_threads(j);
    }
    let pool = match pool.build() {
        Ok(p) => p,
        Err(e) => return fail(&Failure::domain(format!("thread pool: {e}"))),
    };

    let started_at = chrono::Utc::now();
    let clock = Instant::now();
    let (command, params, seed, result) = pool.install(|| dispatch(&cli.command));
    let outcome = match result {
        Ok(o) => o,
        Err(f) => return fail(&f),
    };
    let manifest = Manifest {
        command,
        params,
        seed,
        version: env!("CARGO_PKG_VERSION"),
        outputs: outcome.outputs,
        run: RunInfo {
            argv,
            jobs: pool.current_num_threads(),
            started_at: started_at.to_rfc3339(),
            finished_at: chrono::Utc::now().to_rfc3339(),
            elapsed_ms: clock.elapsed().as_millis(),
        },
    };
    match outcome.payload {
        Payload::Single(result) => {
            let doc = json!({"manifest": manifest, "result": result});
            println!("{}", serde_json::to_string_pretty(&doc).expect("serializable"));
        }
        Payload::Lines(lines) => {
            for line in lines {
                println!("{line}");
            }
            println!("{}", json!({"manifest": manifest}));
        }
    }
    if outcome.violation {
        eprintln!("error: verification found a violation");
        return ExitCode::from(EXIT_VIOLATION);
    }
    ExitCode::SUCCESS
}
