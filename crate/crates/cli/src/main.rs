use std::io::Write;
use std::process::ExitCode;

fn emit(mut sink: impl Write, text: &str) {
    if text.is_empty() {
        return;
    }
    // A closed pipe (e.g. `| head`) is not an error worth reporting.
    let _ = sink.write_all(text.as_bytes());
    if !text.ends_with('\n') {
        let _ = sink.write_all(b"\n");
    }
    let _ = sink.flush();
}

fn main() -> ExitCode {
    let outcome = qplane_cli::run_args(std::env::args_os().skip(1));
    emit(std::io::stdout().lock(), &outcome.stdout);
    emit(std::io::stderr().lock(), &outcome.stderr);
    ExitCode::from(outcome.code as u8)
}
