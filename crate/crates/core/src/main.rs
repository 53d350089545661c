fn main() {
    std::process::exit(equibouquet::cli::run());
}
