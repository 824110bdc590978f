fn main() {
    std::process::exit(tropih::cli::run(std::env::args_os()));
}
