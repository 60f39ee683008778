fn main() {
    std::process::exit(seplab::cli::main_with_args(std::env::args_os()));
}
