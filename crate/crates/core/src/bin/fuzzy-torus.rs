fn main() {
    std::process::exit(fuzzy_torus::cli::main_with_args(std::env::args_os()));
}
