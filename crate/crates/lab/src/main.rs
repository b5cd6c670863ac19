use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use floquet_lab::config::{parse_assignment, Command, Format, PartialConfig, RunConfig};
use floquet_lab::{execute, LabError, LabResult};

/// Kicked-system experiments: writes CSV/JSON tables and manifest.json.
#[derive(Debug, Parser)]
#[command(name = "floquet", version)]
struct Cli {
    #[arg(value_enum)]
    command: Command,
    /// Flat TOML file; command-line flags override its values.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    threads: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Parameter override, repeatable: `--set gamma=1.5`.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    set: Vec<String>,
}

fn resolve(cli: Cli) -> LabResult<RunConfig> {
    let mut cfg = RunConfig::new(cli.command);
    if let Some(path) = &cli.config {
        let text = std::fs::read_to_string(path)
            .map_err(|e| LabError::Config(format!("cannot read {}: {e}", path.display())))?;
        let file = PartialConfig::from_toml_str(&text)?;
        if file.command.is_some_and(|c| c != cli.command) {
            return Err(LabError::Config(format!(
                "config file is for `{}`, not `{}`",
                file.command.unwrap().as_str(),
                cli.command.as_str()
            )));
        }
        cfg.apply(file);
    }
    let mut flags = PartialConfig {
        out: cli.out,
        threads: cli.threads,
        seed: cli.seed,
        format: cli.format,
        ..Default::default()
    };
    for s in &cli.set {
        let (k, v) = parse_assignment(s)?;
        flags.params.insert(k, v);
    }
    cfg.apply(flags);
    Ok(cfg)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match resolve(cli).and_then(|cfg| execute(&cfg).map(|m| (cfg, m))) {
        Ok((cfg, m)) => {
            eprintln!(
                "{}: wrote {} file(s) to {} in {:.2}s",
                m.command,
                m.outputs.len() + 1,
                cfg.out.display(),
                m.wall_clock_seconds
            );
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("floquet: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
