use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let out = bcwitt_core::cli::run(std::env::args_os());
    if !out.stdout.is_empty() {
        let mut stdout = std::io::stdout().lock();
        let _ = writeln!(stdout, "{}", out.stdout.trim_end());
    }
    if !out.stderr.is_empty() {
        eprint!("{}", out.stderr);
    }
    ExitCode::from(out.code as u8)
}
