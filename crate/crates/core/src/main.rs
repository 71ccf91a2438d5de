fn main() {
    std::process::exit(polycurve::cli::run(std::env::args_os()));
}
