use clap::Parser;

fn main() {
    let args = sheetfk_cli::Args::parse();
    std::process::exit(sheetfk_cli::run(&args));
}
