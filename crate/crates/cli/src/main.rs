fn main() {
    std::process::exit(richrt_cli::run(std::env::args_os()));
}
