use std::process::ExitCode;

use bohrfrac::cli::{run, MAX_TERMS_ENV};

fn main() -> ExitCode {
    let env = std::env::var(MAX_TERMS_ENV).ok();
    let code = run(
        std::env::args_os(),
        env.as_deref(),
        &mut std::io::stdout().lock(),
        &mut std::io::stderr().lock(),
    );
    ExitCode::from(code as u8)
}
