fn main() {
    std::process::exit(hcgp_cli::cli(std::env::args_os()));
}
