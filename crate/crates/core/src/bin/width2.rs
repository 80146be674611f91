fn main() {
    std::process::exit(width2::cli::run(std::env::args_os()));
}
