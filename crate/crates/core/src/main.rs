fn main() {
    std::process::exit(openlp::cli::main_with_args(std::env::args_os()));
}
