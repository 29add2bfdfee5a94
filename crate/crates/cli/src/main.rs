use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let resp = quatring_cli::run(std::env::args_os());
    let mut out = std::io::stdout().lock();
    if out.write_all(resp.stdout.as_bytes()).and_then(|_| out.flush()).is_err() {
        return ExitCode::from(2);
    }
    ExitCode::from(resp.code as u8)
}
