fn main() {
    std::process::exit(eqpart::cli::main());
}
