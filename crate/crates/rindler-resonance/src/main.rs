fn main() {
    std::process::exit(rindler_resonance::cli::run());
}
