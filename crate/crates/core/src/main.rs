fn main() {
    std::process::exit(bidiff::cli::run(std::env::args_os()));
}
