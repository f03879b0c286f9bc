fn main() {
    std::process::exit(scancrypt::cli::run_cli(std::env::args_os()));
}
