fn main() {
    std::process::exit(arc_bounds::cli::main_with_args(std::env::args_os()));
}
