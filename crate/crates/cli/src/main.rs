use clap::Parser;

fn main() {
    let cli = simred_cli::Cli::parse();
    std::process::exit(simred_cli::run(&cli));
}
