fn main() {
    std::process::exit(polyrat::cli::main_with_args(std::env::args_os()));
}
