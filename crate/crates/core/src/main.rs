fn main() {
    std::process::exit(posetope::cli::run());
}
