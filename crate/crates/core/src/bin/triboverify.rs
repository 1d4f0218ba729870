fn main() {
    std::process::exit(triboverify::cli::run(std::env::args().collect()));
}
