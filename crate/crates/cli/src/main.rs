use clap::Parser;
use pauliq_cli::{run, Cli};

fn main() {
    // Die quietly when a downstream pipe closes, like any other filter.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let argv: Vec<String> = std::env::args().collect();
    let cli = Cli::parse();
    if let Err(e) = run(&cli, &argv) {
        eprintln!("error: {e}");
        std::process::exit(e.exit_code());
    }
}
