fn main() {
    std::process::exit(spectrum_scope::cli::run(std::env::args_os()));
}
