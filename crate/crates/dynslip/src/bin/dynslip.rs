fn main() {
    std::process::exit(dynslip::cli::run_from_env());
}
