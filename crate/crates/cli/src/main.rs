//! `movquad`: command-line front end.
//!
//! Exit codes: 0 success, 1 input error, 2 oracle verification failure,
//! 3 internal failure (a violated invariant or bound).

mod args;
mod run;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

fn main() -> ExitCode {
    let job = match args::JobConfig::try_parse() {
        Ok(job) => job,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { run::EXIT_INPUT } else { run::EXIT_OK });
        }
    };
    let out = run::run(&job);
    let _ = std::io::stdout().write_all(out.stdout.as_bytes());
    let _ = std::io::stderr().write_all(out.stderr.as_bytes());
    ExitCode::from(out.code)
}
