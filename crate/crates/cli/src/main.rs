use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::process::ExitCode;

use clap::Parser;

use halfsum_cli::{run, Cli, CliError};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.out {
        Some(path) => File::create(path).map_err(CliError::from).and_then(|f| {
            let mut w = BufWriter::new(f);
            let status = run(&cli.command, &mut w)?;
            w.flush()?;
            Ok(status)
        }),
        None => {
            let stdout = io::stdout();
            let mut w = stdout.lock();
            run(&cli.command, &mut w)
        }
    };
    match result {
        Ok(status) => ExitCode::from(status.exit_code()),
        Err(e) => {
            eprintln!("halfsum: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
