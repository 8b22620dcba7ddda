use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(g2forms_cli::run(std::env::args_os()))
}
