fn main() {
    std::process::exit(gridmorse::cli::main_with_args(std::env::args_os()));
}
