use clap::Parser;

fn main() {
    let cli = cecp_cli::Cli::parse();
    if let Err(err) = cecp_cli::run(&cli) {
        eprintln!("error: {err:#}");
        std::process::exit(cecp_cli::exit_code(&err));
    }
}
