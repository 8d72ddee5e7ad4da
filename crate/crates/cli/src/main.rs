use clap::Parser;

fn main() {
    let cli = simstab_cli::Cli::parse();
    std::process::exit(simstab_cli::main_with(
        cli,
        std::env::args().skip(1).collect(),
    ));
}
