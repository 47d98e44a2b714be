fn main() {
    std::process::exit(bubbleflow::cli::run(std::env::args_os()));
}
