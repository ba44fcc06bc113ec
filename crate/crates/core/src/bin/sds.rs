fn main() {
    std::process::exit(sds_core::cli::run());
}
