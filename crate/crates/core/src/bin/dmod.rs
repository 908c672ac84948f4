fn main() {
    std::process::exit(dmod::cli::main_from_env());
}
