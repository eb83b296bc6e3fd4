fn main() {
    std::process::exit(arithstat::cli::main_with_args(std::env::args_os()));
}
