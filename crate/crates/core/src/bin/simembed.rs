fn main() {
    std::process::exit(simembed::cli::run());
}
