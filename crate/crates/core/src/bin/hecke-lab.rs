fn main() {
    std::process::exit(hecke_lab::cli::run(std::env::args().collect()));
}
