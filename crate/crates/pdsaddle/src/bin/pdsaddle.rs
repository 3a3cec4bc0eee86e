fn main() {
    std::process::exit(pdsaddle::cli::main_with(std::env::args_os()));
}
