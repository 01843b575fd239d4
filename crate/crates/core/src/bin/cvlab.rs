fn main() {
    std::process::exit(cvlab::cli::run());
}
