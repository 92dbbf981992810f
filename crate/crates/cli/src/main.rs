mod args;
mod cache;
mod commands;
mod report;

use std::io::Write;
use std::process::ExitCode;
use std::time::Instant;

use clap::Parser;

use args::Cli;
use cache::{report_digest, Cache, CachedRun, RunManifest, CODE_VERSION};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] gct_core::Error),
    #[error("{0}")]
    Io(String),
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(gct_core::Error::Capacity(_)) => 3,
            _ => 2,
        }
    }
}

fn execute(cli: Cli) -> Result<CachedRun, CliError> {
    let g = cli.global;
    if g.threads > 0 {
        // fails only if a pool already exists, which cannot happen this early
        let _ = rayon::ThreadPoolBuilder::new().num_threads(g.threads).build_global();
    }
    let job = commands::plan(cli.command, g.seed)?;
    let mut manifest = RunManifest {
        command: job.command,
        parameters: job.parameters,
        seed: g.seed,
        code_version: CODE_VERSION.to_string(),
        elapsed_ms: 0,
        result_digest: String::new(),
    };
    let store = (job.cacheable && !g.no_cache).then(|| Cache::new(cache::default_dir()));
    let key = manifest.input_digest();
    if let Some(hit) = store.as_ref().and_then(|c| c.load(&key)) {
        return Ok(hit);
    }
    let start = Instant::now();
    let report = (job.run)()?;
    manifest.elapsed_ms = start.elapsed().as_millis();
    manifest.result_digest = report_digest(&report);
    let run = CachedRun { manifest, report };
    if let Some(c) = &store {
        if let Err(e) = c.store(&run) {
            eprintln!("warning: could not write cache entry: {e}");
        }
    }
    Ok(run)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let json = cli.global.json;
    match execute(cli) {
        Ok(run) => {
            let text = if json {
                serde_json::to_string_pretty(&run).expect("run serializes") + "\n"
            } else {
                run.report.render_text()
            };
            let mut out = std::io::stdout().lock();
            let _ = out.write_all(text.as_bytes());
            ExitCode::from(if run.report.passed() { 0 } else { 1 })
        }
        Err(e) => {
            if json {
                let rec = serde_json::json!({ "error": e.to_string(), "exit_code": e.exit_code() });
                println!("{}", serde_json::to_string_pretty(&rec).expect("error record"));
            }
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
