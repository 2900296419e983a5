fn main() {
    std::process::exit(dmq_cli::run_from_env());
}
