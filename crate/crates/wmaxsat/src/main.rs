fn main() {
    env_logger::init();
    std::process::exit(wmaxsat::cli::run());
}
