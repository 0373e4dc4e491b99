//! Command-line front end: `generate`, `spectrum`, `embed`, `cluster`,
//! `evaluate` and `replay`.
//!
//! Exit codes: 0 success, 1 usage error, 2 data error, 3 numerical failure.
//! Every failure prints a single `error[usage|data|numerical]: ...` line to
//! stderr. Each run leaves `<out>.manifest.json` next to its main output.

mod args;
mod commands;
mod error;
mod files;
mod manifest;
mod plot;
mod report;

use std::ffi::OsString;

use clap::error::ErrorKind;
use clap::Parser;

pub use args::{Cli, Command, VERSION};
pub use commands::{MAX_K, MAX_N};
pub use error::{CliError, Kind};
pub use files::{manifest_path, sha256_hex};
pub use manifest::RunManifest;
pub use plot::render_spectrum_svg;

pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => return report_clap_error(e),
    };
    match commands::execute(&cli.command) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("{e}");
            e.exit_code()
        }
    }
}

fn report_clap_error(e: clap::Error) -> i32 {
    match e.kind() {
        ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
            let _ = e.print();
            0
        }
        ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => {
            eprintln!("error[usage]: missing subcommand");
            eprint!("{}", e.render());
            1
        }
        _ => {
            let text = e.render().to_string();
            let mut lines = text.lines();
            let first = lines.next().unwrap_or_default();
            eprintln!("error[usage]: {}", first.trim_start_matches("error: "));
            for line in lines {
                eprintln!("{line}");
            }
            1
        }
    }
}
