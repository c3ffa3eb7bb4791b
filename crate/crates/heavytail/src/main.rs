fn main() {
    std::process::exit(heavytail::cli::run_from_env());
}
