fn main() {
    std::process::exit(knuckle_crane::cli::run());
}
