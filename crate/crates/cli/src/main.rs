fn main() {
    std::process::exit(terracini_cli::run(std::env::args_os()));
}
