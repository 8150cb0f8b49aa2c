fn main() {
    std::process::exit(hyperquintic::cli::main_with_args(std::env::args_os()));
}
