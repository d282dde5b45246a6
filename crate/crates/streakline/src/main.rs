use std::process::ExitCode;

fn main() -> ExitCode {
    streakline::cli::run()
}
