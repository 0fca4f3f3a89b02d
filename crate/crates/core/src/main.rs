fn main() {
    std::process::exit(unitary_density::cli::run(std::env::args_os()));
}
