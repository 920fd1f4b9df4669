use std::process::exit;

fn main() {
    exit(ifs::cli::run());
}
