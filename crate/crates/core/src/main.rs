fn main() {
    std::process::exit(paired::cli::run(std::env::args_os()));
}
