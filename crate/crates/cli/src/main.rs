fn main() {
    std::process::exit(kneserlab_cli::run(std::env::args_os()));
}
