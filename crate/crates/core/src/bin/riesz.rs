fn main() {
    std::process::exit(riesz::cli::main_with_args(std::env::args_os()));
}
