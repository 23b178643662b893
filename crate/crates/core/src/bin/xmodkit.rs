fn main() {
    std::process::exit(xmodkit::cli::run());
}
