use std::io::{self, Write};
use std::process::ExitCode;

fn main() -> ExitCode {
    let mut out = io::BufWriter::new(io::stdout());
    let mut err = io::stderr();
    let code = runspectrum::cli::run_from(std::env::args_os(), &mut out, &mut err);
    if out.flush().is_err() {
        return ExitCode::from(runspectrum::cli::EXIT_IO as u8);
    }
    ExitCode::from(code as u8)
}
