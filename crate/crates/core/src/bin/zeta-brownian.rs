fn main() {
    std::process::exit(zeta_brownian::cli::run(std::env::args_os()));
}
