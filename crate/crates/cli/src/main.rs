fn main() {
    std::process::exit(symmkit_cli::dispatch(std::env::args_os()));
}
