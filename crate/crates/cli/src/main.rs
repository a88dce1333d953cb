use std::process::ExitCode;

fn main() -> ExitCode {
    let outcome = swcert_cli::parse_cli(std::env::args_os()).and_then(|cfg| swcert_cli::run(&cfg));
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(swcert_cli::CliError::Clap(e)) => {
            let code = e.exit_code();
            let _ = e.print();
            ExitCode::from(code as u8)
        }
        Err(e) => {
            eprintln!("swcert: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
