use clap::Parser;

use lipinterp::cli::{dispatch, error_record, exit_code, Cli};

fn main() {
    let cli = Cli::parse();
    if let Some(n) = std::env::var("LI_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
    {
        if n > 0 {
            let _ = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build_global();
        }
    }
    if let Err(err) = dispatch(&cli) {
        eprintln!("{}", error_record(&err));
        std::process::exit(exit_code(&err));
    }
}
