fn main() {
    std::process::exit(ramsey_multiplicity::cli::run(std::env::args_os()));
}
