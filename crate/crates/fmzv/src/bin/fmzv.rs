use std::process::ExitCode;

fn main() -> ExitCode {
    // Die quietly when the consumer closes the pipe (fmzv eval ... | head)
    // instead of panicking mid-println.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    fmzv::cli::run()
}
