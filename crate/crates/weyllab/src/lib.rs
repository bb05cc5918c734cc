//! Command-line front end for `weyllab-core`.
//!
//! Exit codes: 0 success or valid certificate, 1 negative result, 2 usage
//! error, 3 internal inconsistency, 4 failed hypotheses.

pub mod cache;
pub mod cli;
pub mod commands;
pub mod config;
pub mod output;

use std::ffi::OsString;

use clap::Parser;

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;
pub const EXIT_HYPOTHESIS: i32 = 4;

/// Buffered result of one invocation.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    pub fn error(code: i32, message: impl Into<String>) -> Outcome {
        let mut stderr = message.into();
        if !stderr.ends_with('\n') {
            stderr.push('\n');
        }
        Outcome { code, stdout: String::new(), stderr }
    }
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match cli::Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome::error(code, text)
            };
        }
    };
    let mut config = match &cli.config {
        Some(path) => match config::Config::load(path) {
            Ok(c) => c,
            Err(e) => return Outcome::error(EXIT_USAGE, e.to_string()),
        },
        None => config::Config::default(),
    };
    if let Some(f) = cli.format {
        config.format = f;
    }
    commands::dispatch(&cli.command, &config)
}
