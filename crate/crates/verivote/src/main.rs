fn main() {
    std::process::exit(verivote::cli::run());
}
