use std::io;
use std::process::ExitCode;

use clap::Parser;
use hodgewitt::cli::{self, RunConfig};

fn main() -> ExitCode {
    let config = match RunConfig::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { cli::EXIT_ERROR as u8 } else { 0 });
        }
    };
    let code = cli::run(&config, &mut io::stdout().lock(), &mut io::stderr().lock());
    ExitCode::from(code as u8)
}
