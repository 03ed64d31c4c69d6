use clap::Parser;
use sintegral::cli;

fn main() {
    // worker count, if requested through the environment
    if let Ok(workers) = std::env::var("SINTEGRAL_WORKERS") {
        if let Ok(n) = workers.parse::<usize>() {
            let _ = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build_global();
        }
    }
    let args = cli::Cli::parse();
    let code = match cli::run(args) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                sintegral::Error::Validation(_)
                | sintegral::Error::GeneralPosition(_)
                | sintegral::Error::Parse(_) => cli::EXIT_VALIDATION,
                _ => cli::EXIT_RUNTIME,
            }
        }
    };
    std::process::exit(code);
}
