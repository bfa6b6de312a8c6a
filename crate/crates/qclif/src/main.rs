fn main() {
    std::process::exit(qclif::cli::run_main());
}
