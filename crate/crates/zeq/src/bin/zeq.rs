fn main() {
    // die quietly when the consumer closes the pipe (head, etc.)
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    std::process::exit(zeq::cli::run());
}
