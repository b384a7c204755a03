use std::process;

fn main() {
    process::exit(efp_cli::cli::run());
}
