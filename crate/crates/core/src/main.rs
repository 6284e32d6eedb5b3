fn main() {
    std::process::exit(picard::cli::main());
}
