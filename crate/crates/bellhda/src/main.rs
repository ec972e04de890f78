use clap::Parser;

fn main() {
    let cli = bellhda::cli::Cli::parse();
    std::process::exit(bellhda::cli::main_with(cli));
}
