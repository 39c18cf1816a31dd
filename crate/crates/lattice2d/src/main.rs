fn main() {
    std::process::exit(lattice2d::cli::run(std::env::args_os()));
}
