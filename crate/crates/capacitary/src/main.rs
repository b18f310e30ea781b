use std::process::ExitCode;

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let code = capacitary::cli::run_with_io(&args, &mut std::io::stdout());
    ExitCode::from(code)
}
