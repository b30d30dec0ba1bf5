fn main() {
    std::process::exit(subsums::cli::main_with_args(std::env::args_os()));
}
