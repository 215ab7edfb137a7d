fn main() {
    std::process::exit(colander::cli::run(std::env::args_os()));
}
