fn main() {
    std::process::exit(tagforge::cli::run(std::env::args_os()));
}
