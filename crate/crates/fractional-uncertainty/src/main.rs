fn main() {
    std::process::exit(fractional_uncertainty::cli::run());
}
