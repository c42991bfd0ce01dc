use std::process::ExitCode;

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let mut stdout = std::io::stdout().lock();
    let code = paralogic::cli::run(&args, &mut stdout);
    ExitCode::from(code)
}
