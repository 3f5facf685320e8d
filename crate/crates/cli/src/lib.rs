//! Scenario runner for cursor-model Grover machines: figure series as CSV,
//! graph compilation, conservation audits and peak estimates.
//!
//! The binary `cursorq` is a thin clap front end over this library.

pub mod commands;
pub mod config;
pub mod csv;
pub mod figures;
pub mod scenario;

/// Environment variable naming the directory CSV and graph files go to.
pub const OUT_DIR_ENV: &str = "CURSORQ_OUT";

/// `--out-dir` if given, else `$CURSORQ_OUT`, else the working directory.
pub fn output_dir(flag: Option<&std::path::Path>) -> std::path::PathBuf {
    match flag {
        Some(p) => p.to_path_buf(),
        None => std::env::var_os(OUT_DIR_ENV)
            .map(Into::into)
            .unwrap_or_else(|| ".".into()),
    }
}
