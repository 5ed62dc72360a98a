//! Command-line front end. It resolves configuration, calls into the library
//! and writes artifacts; it does no physics of its own.
//!
//! Every artifact embeds its fully resolved config (JSON `config` field, or
//! `#! ` lines at the top of a CSV). Passing the artifact back through
//! `--config` reproduces it byte for byte.

mod args;
mod config;
mod run;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::Parser;

pub use args::{Cli, Command};
pub use config::{
    load_config_source, OracleMode, OutputFormat, RunConfig, Settings, Subcommand,
    CSV_CONFIG_PREFIX, SCHEMA_VERSION,
};
pub use run::{execute, Artifact};

use crate::error::{Error, Result};

/// Environment variable naming the default output directory.
pub const OUT_DIR_ENV: &str = "PLASMA_IGNITION_OUT_DIR";

/// Resolves flags and config file into a [`RunConfig`].
pub fn resolve(command: &Command) -> Result<RunConfig> {
    let mut settings = Settings::new(command.subcommand());
    if let Some(path) = &command.run_args().config {
        settings.merge_text(&load_config_source(path)?)?;
    }
    command.apply_flags(&mut settings)?;
    settings.resolve()
}

/// Output path: `--output`, else `<subcommand>.<ext>` under `out_dir`.
pub fn output_path(command: &Command, config: &RunConfig, out_dir: Option<&Path>) -> PathBuf {
    if let Some(p) = &command.run_args().output {
        return p.clone();
    }
    let name = format!("{}.{}", config.subcommand.name(), config.format.extension());
    match out_dir {
        Some(d) => d.join(name),
        None => PathBuf::from(name),
    }
}

/// Writes `bytes` to a temporary file beside `path` and renames it into place,
/// so readers never see a partial file.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(|e| Error::io(dir, e))?;
    tmp.write_all(bytes).map_err(|e| Error::io(path, e))?;
    tmp.as_file().sync_all().map_err(|e| Error::io(path, e))?;
    tmp.persist(path).map_err(|e| Error::io(path, e.error))?;
    Ok(())
}

/// Resolves, runs and writes. Returns the summary line and the output path.
pub fn run_command(command: &Command, out_dir: Option<&Path>) -> Result<(String, PathBuf)> {
    let config = resolve(command)?;
    let path = output_path(command, &config, out_dir);
    let artifact = match command.run_args().threads {
        Some(0) => return Err(Error::config("threads", "must be at least 1")),
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| Error::config("threads", e.to_string()))?
            .install(|| execute(&config))?,
        None => execute(&config)?,
    };
    write_atomic(&path, &artifact.body)?;
    Ok((artifact.summary, path))
}

/// Entry point behind the binary. Returns the process exit code.
///
/// Failures are reported on `stderr` as one JSON object with `kind` and `message`.
pub fn main_with_args<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let _ = if code == 0 {
                write!(stdout, "{text}")
            } else {
                write!(stderr, "{text}")
            };
            return code;
        }
    };
    let out_dir = std::env::var_os(OUT_DIR_ENV).map(PathBuf::from);
    match run_command(&cli.command, out_dir.as_deref()) {
        Ok((summary, path)) => {
            let _ = writeln!(
                stdout,
                "{}: {summary} -> {}",
                cli.command.subcommand().name(),
                path.display()
            );
            0
        }
        Err(e) => {
            let msg = serde_json::json!({"error": {"kind": e.kind(), "message": e.to_string()}});
            let _ = writeln!(stderr, "{msg}");
            match e {
                Error::Config { .. }
                | Error::InvalidParameter { .. }
                | Error::InvalidAxis { .. } => 2,
                _ => 1,
            }
        }
    }
}
