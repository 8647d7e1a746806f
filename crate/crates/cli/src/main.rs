fn main() {
    std::process::exit(tribrot_cli::run(std::env::args_os()));
}
