use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::Parser;
use rayon::prelude::*;

use sunada::job::{batch_exit_code, parse_jobs, run_job_timed, Report, Status};
use sunada::Caps;

/// Runs JSON job files and writes deterministic reports.
#[derive(Parser)]
#[command(name = "sunada", version)]
struct Cli {
    /// Job file holding one job or an array of jobs.
    #[arg(long = "job", value_name = "FILE", required = true)]
    jobs: Vec<PathBuf>,
    /// Directory for `<job hash>.json` reports; stdout when absent.
    #[arg(long, value_name = "DIR")]
    out: Option<PathBuf>,
    /// Seed for randomized checks, overriding any seed in the jobs.
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    threads: Option<usize>,
    /// JSON size limits.
    #[arg(long, value_name = "FILE")]
    caps: Option<PathBuf>,
}

fn fail(msg: String) -> ExitCode {
    eprintln!("sunada: {msg}");
    ExitCode::from(1)
}

fn write(dir: &Path, name: &str, text: &str) -> std::io::Result<()> {
    std::fs::write(dir.join(name), text)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(path) = &cli.caps {
        let caps = std::fs::read_to_string(path)
            .map_err(|e| e.to_string())
            .and_then(|t| serde_json::from_str::<Caps>(&t).map_err(|e| e.to_string()));
        match caps {
            Ok(c) => Caps::install(c),
            Err(e) => return fail(format!("{}: {e}", path.display())),
        }
    }
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            return fail(e.to_string());
        }
    }
    let mut parsed = Vec::new();
    for path in &cli.jobs {
        let text = match std::fs::read_to_string(path) {
            Ok(t) => t,
            Err(e) => return fail(format!("{}: {e}", path.display())),
        };
        match parse_jobs(&text) {
            Ok(jobs) => parsed.extend(jobs.into_iter().map(|j| (path.clone(), j))),
            Err(e) => parsed.push((path.clone(), Err(e))),
        }
    }
    if let Some(dir) = &cli.out {
        if let Err(e) = std::fs::create_dir_all(dir) {
            return fail(format!("{}: {e}", dir.display()));
        }
    }
    let outcomes: Vec<_> = parsed
        .into_par_iter()
        .map(|(path, job)| {
            job.map(|mut j| {
                if cli.seed.is_some() {
                    j.seed = cli.seed;
                }
                run_job_timed(&j)
            })
            .map_err(|e| (path, e))
        })
        .collect();
    let mut statuses = Vec::new();
    for outcome in outcomes {
        match outcome {
            Err((path, e)) => {
                eprintln!("{}: error: {e}", path.display());
                statuses.push(Status::Error);
            }
            Ok((report, timing)) => {
                statuses.push(report.status);
                let text = report.to_json();
                match &cli.out {
                    Some(dir) => {
                        let timing_text = serde_json::to_string_pretty(&timing).expect("timing serializes") + "\n";
                        let written = write(dir, &format!("{}.json", report.job_hash), &text)
                            .and_then(|_| write(dir, &format!("{}.timing.json", report.job_hash), &timing_text));
                        if let Err(e) = written {
                            return fail(format!("{}: {e}", dir.display()));
                        }
                    }
                    None => print!("{text}"),
                }
                eprintln!("{}", summary(&report, timing.seconds));
            }
        }
    }
    ExitCode::from(batch_exit_code(&statuses) as u8)
}

fn summary(r: &Report, seconds: f64) -> String {
    let kind = r.job["kind"].as_str().unwrap_or("?");
    let status = match r.status {
        Status::Confirmed => "confirmed",
        Status::Refuted => "REFUTED",
        Status::Error => "ERROR",
    };
    let mut line = format!("{} {kind:<16} {status} ({seconds:.2}s)", &r.job_hash[..12]);
    if let Some(e) = &r.error {
        line += &format!(": {e}");
    }
    for f in &r.refutations {
        line += &format!("\n    refuted: {f}");
    }
    line
}
