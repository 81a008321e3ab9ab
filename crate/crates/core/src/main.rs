fn main() {
    std::process::exit(hvw::cli::main_with_args(std::env::args_os()));
}
