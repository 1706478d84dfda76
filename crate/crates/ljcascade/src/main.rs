use std::process;

fn main() {
    process::exit(ljcascade::cli::run(std::env::args_os()));
}
