fn main() {
    std::process::exit(torweyl_cli::run(std::env::args_os()));
}
