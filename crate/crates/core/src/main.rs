fn main() {
    std::process::exit(ostrovsky::cli::main_with_args(std::env::args_os()));
}
