fn main() {
    std::process::exit(scherk_costa::cli::run(std::env::args_os()));
}
