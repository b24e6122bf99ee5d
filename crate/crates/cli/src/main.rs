use std::process::ExitCode;

use clap::Parser;
use ospq_cli::{run, Cli, EXIT_USAGE};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    match run(&cli) {
        Ok(out) => {
            let written = match &cli.out.output {
                Some(p) => std::fs::write(p, &out.text),
                None => {
                    print!("{}", out.text);
                    Ok(())
                }
            };
            if let Err(e) = written {
                eprintln!("ospq: cannot write output: {e}");
                return ExitCode::from(1);
            }
            ExitCode::from(out.code as u8)
        }
        Err(e) => {
            eprintln!("ospq: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
