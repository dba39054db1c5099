//! Command-line driver: argument handling, check dispatch and report output.

pub mod checks;
pub mod config;
pub mod report;

use std::ffi::OsString;
use std::io::Write;
use std::time::Instant;

use clap::error::ErrorKind;

use config::{Command, Out, Settings};
use report::CheckReport;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

pub fn dispatch(cmd: Command, set: &Settings) -> Vec<CheckReport> {
    match cmd {
        Command::Block => checks::block(set),
        Command::Bilinear => checks::bilinear(set),
        Command::Qtoda => checks::qtoda(set),
        Command::Algebraic => checks::algebraic(set),
        Command::AppendixB => checks::appendix_b(set),
        Command::FiberBase => checks::fiber_base(set),
        Command::Symmetry => checks::symmetry(set),
        Command::Limits => checks::limits(set),
        Command::Tau => checks::tau(set),
        Command::Identities => checks::identities(set),
        Command::Suite => checks::suite(set),
    }
}

/// Runs one command line, writing the report to `out` and diagnostics to
/// `err`. Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString>,
{
    let cli = match config::parse(args.into_iter().map(Into::into).collect()) {
        Ok(c) => c,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            let _ = write!(out, "{e}");
            return EXIT_PASS;
        }
        Err(e) => {
            let _ = write!(err, "{e}");
            return EXIT_USAGE;
        }
    };
    let set = match Settings::from_opts(&cli.opts) {
        Ok(s) => s,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_USAGE;
        }
    };
    let start = Instant::now();
    let mut reports = dispatch(cli.command, &set);
    if cli.opts.timing {
        let ms = start.elapsed().as_millis() as u64;
        for r in &mut reports {
            r.wall_time_ms = ms;
        }
    }
    let text = match cli.opts.out.unwrap_or_default() {
        Out::Json => report::to_json(&reports) + "\n",
        Out::Csv => report::to_csv(&reports),
    };
    if out.write_all(text.as_bytes()).is_err() {
        return EXIT_FAIL;
    }
    if reports.iter().all(CheckReport::pass) {
        EXIT_PASS
    } else {
        EXIT_FAIL
    }
}
