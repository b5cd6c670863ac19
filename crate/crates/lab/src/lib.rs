//! Batch runner around `floquet-core`: flat TOML configs, deterministic
//! CSV/JSON tables and a checksummed run manifest.

pub mod config;
pub mod error;
pub mod manifest;
pub mod run;
pub mod table;

use std::fs;
use std::time::{Instant, SystemTime, UNIX_EPOCH};

pub use config::{Command, Format, RunConfig};
pub use error::{LabError, LabResult};
pub use manifest::RunManifest;
pub use table::Artifact;

/// Caps the worker count regardless of `--threads`.
pub const MAX_THREADS_ENV: &str = "FLOQUET_MAX_THREADS";

pub fn worker_count(requested: Option<usize>) -> LabResult<usize> {
    let base = match requested {
        Some(0) => return Err(LabError::Config("threads must be at least 1".into())),
        Some(n) => n,
        None => std::thread::available_parallelism().map_or(1, |n| n.get()),
    };
    let cap = match std::env::var(MAX_THREADS_ENV) {
        Ok(s) => s
            .trim()
            .parse::<usize>()
            .ok()
            .filter(|&n| n > 0)
            .ok_or_else(|| LabError::Config(format!("{MAX_THREADS_ENV} must be a positive integer, got `{s}`")))?,
        Err(_) => usize::MAX,
    };
    Ok(base.min(cap))
}

/// Validates, computes and returns the artifacts without touching disk.
pub fn compute(cfg: &RunConfig) -> LabResult<(Vec<Artifact>, usize)> {
    let threads = worker_count(cfg.threads)?;
    let mut params = cfg.params();
    let job = run::prepare(cfg.command, &mut params)?;
    params.finish()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| LabError::Resource(e.to_string()))?;
    let ctx = run::Ctx {
        pool,
        format: cfg.format,
        seed: cfg.seed,
    };
    let mut artifacts = job.compute(&ctx)?;
    artifacts.sort_by(|a, b| a.name.cmp(&b.name));
    Ok((artifacts, threads))
}

/// Runs a config end to end: outputs plus `manifest.json` in `cfg.out`.
pub fn execute(cfg: &RunConfig) -> LabResult<RunManifest> {
    let started = SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_secs());
    let clock = Instant::now();
    let (artifacts, threads) = compute(cfg)?;
    fs::create_dir_all(&cfg.out)?;
    for a in &artifacts {
        fs::write(cfg.out.join(&a.name), &a.bytes)?;
    }
    let manifest = RunManifest {
        tool: env!("CARGO_PKG_NAME").to_string(),
        version: env!("CARGO_PKG_VERSION").to_string(),
        command: cfg.command.as_str().to_string(),
        config: cfg.to_toml_string(),
        threads,
        started_unix_seconds: started,
        wall_clock_seconds: clock.elapsed().as_secs_f64(),
        outputs: manifest::entries(&artifacts),
    };
    let mut text = serde_json::to_vec_pretty(&manifest).map_err(LabError::numeric)?;
    text.push(b'\n');
    fs::write(cfg.out.join(manifest::MANIFEST_FILE), text)?;
    Ok(manifest)
}
