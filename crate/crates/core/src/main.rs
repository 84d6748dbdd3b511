fn main() {
    std::process::exit(prodfrac::cli::main());
}
