use std::io;
use std::process::ExitCode;

use curvelab_cli::config::TOL_ENV;

fn main() -> ExitCode {
    let code = curvelab_cli::run(
        std::env::args_os(),
        std::env::var(TOL_ENV).ok(),
        &mut io::stdout().lock(),
        &mut io::stderr().lock(),
    );
    ExitCode::from(code)
}
