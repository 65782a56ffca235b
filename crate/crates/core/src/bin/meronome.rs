fn main() {
    std::process::exit(meronome::cli::run(std::env::args_os()));
}
