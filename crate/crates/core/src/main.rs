fn main() {
    std::process::exit(infker::cli::main());
}
