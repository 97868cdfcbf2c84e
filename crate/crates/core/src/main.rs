fn main() {
    std::process::exit(apspectra::cli::run(std::env::args_os()));
}
