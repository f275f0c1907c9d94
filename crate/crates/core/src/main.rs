fn main() {
    std::process::exit(multiharmonic::cli::run());
}
